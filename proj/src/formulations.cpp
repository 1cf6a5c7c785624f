#include "backhaul/formulations.hpp"

#include <algorithm>
#include <cmath>
#include <regex>

#include "backhaul/error.hpp"

namespace backhaul {

NamedSetting parse_setting(std::string_view label) {
  static const std::regex pattern(R"((MI|LI)-(ER|LR)(?:\((\d+)\))?)");
  std::cmatch m;
  const std::string text(label);
  if (!std::regex_match(text.c_str(), m, pattern))
    throw Error(ErrorCode::InvalidArgument, "unknown setting '" + text + "'");
  NamedSetting out;
  out.label = text;
  out.setting.interference = m[1] == "MI" ? InterferenceRegime::Minimal : InterferenceRegime::Limited;
  out.setting.radio_chains = m[2] == "ER" ? RadioRegime::Enough : RadioRegime::Limited;
  if (m[3].matched) {
    if (out.setting.radio_chains == RadioRegime::Enough)
      throw Error(ErrorCode::InvalidArgument, "setting '" + text + "': ER takes no chain count");
    const int k = std::stoi(m[3]);
    if (k < 1) throw Error(ErrorCode::InvalidArgument, "setting '" + text + "': chain count must be >= 1");
    out.macro_chains = k;
  }
  return out;
}

const std::vector<std::string>& standard_setting_labels() {
  static const std::vector<std::string> labels{"MI-ER", "MI-LR(1)", "MI-LR(2)", "LI-ER", "LI-LR(1)", "LI-LR(2)"};
  return labels;
}

const char* to_string(Objective objective) {
  switch (objective) {
    case Objective::EqualDemand: return "equal_demand";
    case Objective::Aggregate: return "aggregate";
    case Objective::AggregateFair: return "aggregate_fair";
  }
  return "unknown";
}

Objective parse_objective(std::string_view name) {
  if (name == "equal_demand") return Objective::EqualDemand;
  if (name == "aggregate") return Objective::Aggregate;
  if (name == "aggregate_fair") return Objective::AggregateFair;
  throw Error(ErrorCode::InvalidArgument, "unknown objective '" + std::string(name) + "'");
}

namespace {

using lp::Relation;

bool is_case_one(const Setting& s) {
  return s.interference == InterferenceRegime::Minimal && s.radio_chains == RadioRegime::Enough;
}

Tree checked_tree(const NetworkTopology& topology, const Setting& setting) {
  Tree tree(topology);
  if (auto v = validate_interference_model(topology); !v.empty())
    throw Error(ErrorCode::InvalidTopology, "interference model violated: " + v.front().detail, v.front().station);
  if (tree.small_cells().empty())
    throw Error(ErrorCode::InvalidTopology, "topology has no small-cell BS");
  if (setting.interference == InterferenceRegime::Minimal && !topology.interference_pairs.empty())
    throw Error(ErrorCode::InterferenceNotMinimal,
                "interference-minimal setting given " + std::to_string(topology.interference_pairs.size()) +
                    " interference pairs");
  if (setting.radio_chains == RadioRegime::Enough) {
    for (const auto& s : topology.stations) {
      const auto degree = tree.attached_links(s.id).size();
      if (static_cast<std::size_t>(s.radio_chains) < degree)
        throw Error(ErrorCode::InsufficientRadioChains,
                    "BS " + std::to_string(s.id) + " has " + std::to_string(s.radio_chains) + " radio chains for " +
                        std::to_string(degree) + " links",
                    s.id);
    }
  }
  return tree;
}

// Adds p_f variables and every setting-dependent row that only involves them.
void add_schedule_constraints(const Tree& tree, const Setting& setting, Formulation& f) {
  auto& prog = f.program;
  for (int id : tree.link_ids()) {
    const auto& link = tree.link(id);
    f.p_first_var[id] = prog.add_variable("p_f[" + std::to_string(id) + "]", 0.0, 0.0, link.p_first_max);
  }

  if (setting.interference == InterferenceRegime::Limited) {
    for (const auto& [a, b] : tree.topology().interference_pairs) {
      std::vector<double> row(static_cast<std::size_t>(prog.num_vars), 0.0);
      row[f.p_first_var.at(a)] = 1.0 / tree.link(a).p_first_max;
      row[f.p_first_var.at(b)] = 1.0 / tree.link(b).p_first_max;
      prog.add_constraint(std::move(row), Relation::Le, 1.0,
                          "interference[" + std::to_string(a) + "," + std::to_string(b) + "]");
    }
  }

  if (setting.radio_chains == RadioRegime::Limited) {
    for (const auto& s : tree.topology().stations) {
      std::vector<double> row(static_cast<std::size_t>(prog.num_vars), 0.0);
      if (auto in = tree.inbound_link(s.id)) {
        const auto& link = tree.link(*in);
        row[f.p_first_var.at(*in)] = link.p_last_max / link.p_first_max;
      }
      for (int c : tree.children(s.id)) row[f.p_first_var.at(c)] = 1.0;
      prog.add_constraint(std::move(row), Relation::Le, static_cast<double>(s.radio_chains),
                          "radio[" + std::to_string(s.id) + "]");
    }
  }
}

// (C_i / P_i^f) p_i - load_i >= 0, where `row` already holds -load_i.
void add_capacity_row(const Tree& tree, int link_id, std::vector<double> row, Formulation& f) {
  const auto& link = tree.link(link_id);
  auto& prog = f.program;
  if (f.p_first_var.empty()) {
    for (auto& v : row) v = -v;
    prog.add_constraint(std::move(row), Relation::Le, link.capacity_gbps, "capacity[" + std::to_string(link_id) + "]");
  } else {
    row[f.p_first_var.at(link_id)] = link.capacity_gbps / link.p_first_max;
    prog.add_constraint(std::move(row), Relation::Ge, 0.0, "capacity[" + std::to_string(link_id) + "]");
  }
}

Formulation build_aggregate(const Tree& tree, const Setting& setting) {
  Formulation f;
  for (int bs : tree.small_cells())
    f.demand_var[bs] = f.program.add_variable("D[" + std::to_string(bs) + "]", 1.0);
  if (!is_case_one(setting)) add_schedule_constraints(tree, setting, f);
  for (int id : tree.link_ids()) {
    std::vector<double> row(static_cast<std::size_t>(f.program.num_vars), 0.0);
    for (int bs : tree.subtree(id)) row[f.demand_var.at(bs)] = -1.0;
    add_capacity_row(tree, id, std::move(row), f);
  }
  return f;
}

}  // namespace

Formulation build_equal_demand_lp(const NetworkTopology& topology, const Setting& setting) {
  const Tree tree = checked_tree(topology, setting);
  Formulation f;
  f.equal_demand_var = f.program.add_variable("D_B", 1.0);
  if (!is_case_one(setting)) add_schedule_constraints(tree, setting, f);
  for (int id : tree.link_ids()) {
    std::vector<double> row(static_cast<std::size_t>(f.program.num_vars), 0.0);
    row[f.equal_demand_var] = -static_cast<double>(tree.subtree(id).size());
    add_capacity_row(tree, id, std::move(row), f);
  }
  return f;
}

Formulation build_aggregate_lp(const NetworkTopology& topology, const Setting& setting) {
  return build_aggregate(checked_tree(topology, setting), setting);
}

Formulation build_fair_aggregate_lp(const NetworkTopology& topology, const Setting& setting, double d_b_floor) {
  if (!(d_b_floor >= 0.0) || !std::isfinite(d_b_floor))
    throw Error(ErrorCode::InvalidArgument, "fair floor must be a finite non-negative value");
  const Tree tree = checked_tree(topology, setting);
  Formulation f = build_aggregate(tree, setting);
  for (const auto& [bs, var] : f.demand_var) {
    std::vector<double> row(static_cast<std::size_t>(f.program.num_vars), 0.0);
    row[var] = 1.0;
    f.program.add_constraint(std::move(row), Relation::Ge, d_b_floor, "floor[" + std::to_string(bs) + "]");
  }
  return f;
}

std::map<int, double> link_loads(const Tree& tree, const TrafficDemand& demand) {
  std::map<int, double> out;
  for (int id : tree.link_ids()) {
    double load = 0.0;
    for (int bs : tree.subtree(id)) {
      auto it = demand.per_bs.find(bs);
      if (it != demand.per_bs.end()) load += it->second;
    }
    out[id] = load;
  }
  return out;
}

namespace {

lp::LpSolution run(const Formulation& f) {
  auto sol = lp::solve(f.program);
  if (sol.status == lp::LpStatus::Infeasible) throw Error(ErrorCode::Infeasible, "linear program is infeasible");
  if (sol.status == lp::LpStatus::Unbounded) throw Error(ErrorCode::Unbounded, "linear program is unbounded");
  return sol;
}

// Fills demand-derived fields: the smallest p_f per link that carries its
// load, never above the solver's own value (which is feasible by construction).
void decode_schedule(const Tree& tree, const Formulation& f, const lp::LpSolution& sol, DemandSolution& out) {
  const auto loads = link_loads(tree, out.per_bs_demand);
  for (int id : tree.link_ids()) {
    const auto& link = tree.link(id);
    double p = link.p_first_max * loads.at(id) / link.capacity_gbps;
    p = std::clamp(p, 0.0, link.p_first_max);
    if (auto it = f.p_first_var.find(id); it != f.p_first_var.end()) p = std::min(p, sol.assignment[it->second]);
    out.p_first[id] = p;
    out.p_last[id] = p * link.p_last_max / link.p_first_max;
  }
  out.lp_objective = sol.objective_value;
  out.pivots = sol.pivots;
}

DemandSolution decode_aggregate(const Tree& tree, const Formulation& f, const lp::LpSolution& sol, Objective obj) {
  DemandSolution out;
  out.objective = obj;
  for (const auto& [bs, var] : f.demand_var) out.per_bs_demand.per_bs[bs] = std::max(0.0, sol.assignment[var]);
  decode_schedule(tree, f, sol, out);
  return out;
}

}  // namespace

DemandSolution solve_equal_demand(const NetworkTopology& topology, const Setting& setting) {
  const Formulation f = build_equal_demand_lp(topology, setting);
  const Tree tree(topology);
  const auto sol = run(f);
  DemandSolution out;
  out.objective = Objective::EqualDemand;
  const double d_b = std::max(0.0, sol.assignment[f.equal_demand_var]);
  out.d_b_gbps = d_b;
  for (int bs : tree.small_cells()) out.per_bs_demand.per_bs[bs] = d_b;
  decode_schedule(tree, f, sol, out);
  return out;
}

DemandSolution solve_aggregate(const NetworkTopology& topology, const Setting& setting) {
  const Formulation f = build_aggregate_lp(topology, setting);
  return decode_aggregate(Tree(topology), f, run(f), Objective::Aggregate);
}

DemandSolution solve_fair_aggregate(const NetworkTopology& topology, const Setting& setting, double d_b_floor) {
  const Formulation f = build_fair_aggregate_lp(topology, setting, d_b_floor);
  const auto sol = lp::solve(f.program);
  if (sol.status == lp::LpStatus::Infeasible)
    throw Error(ErrorCode::InfeasibleFloor, "no allocation meets the per-BS floor " + std::to_string(d_b_floor));
  if (sol.status == lp::LpStatus::Unbounded) throw Error(ErrorCode::Unbounded, "linear program is unbounded");
  auto out = decode_aggregate(Tree(topology), f, sol, Objective::AggregateFair);
  out.d_b_gbps = d_b_floor;
  return out;
}

DemandSolution solve_two_step_fair(const NetworkTopology& topology, const Setting& setting) {
  const auto step1 = solve_equal_demand(topology, setting);
  return solve_fair_aggregate(topology, setting, *step1.d_b_gbps);
}

DemandSolution solve_objective(const NetworkTopology& topology, const Setting& setting, Objective objective) {
  switch (objective) {
    case Objective::EqualDemand: return solve_equal_demand(topology, setting);
    case Objective::Aggregate: return solve_aggregate(topology, setting);
    case Objective::AggregateFair: return solve_two_step_fair(topology, setting);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown objective");
}

std::map<int, int> min_radio_chains(const NetworkTopology& topology, const std::map<int, double>& p_first) {
  const Tree tree(topology);
  auto p = [&p_first](int id) {
    auto it = p_first.find(id);
    if (it == p_first.end()) throw Error(ErrorCode::MissingLink, "no p_f for link " + std::to_string(id), id);
    return it->second;
  };
  std::map<int, int> out;
  for (const auto& s : topology.stations) {
    double active = 0.0;
    if (auto in = tree.inbound_link(s.id)) {
      const auto& link = tree.link(*in);
      active += link.p_last_max / link.p_first_max * p(*in);
    }
    for (int c : tree.children(s.id)) active += p(c);
    out[s.id] = std::max(1, static_cast<int>(std::ceil(active - 1e-9)));
  }
  return out;
}

}  // namespace backhaul
