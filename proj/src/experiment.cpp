#include "backhaul/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <fstream>
#include <mutex>
#include <set>
#include <thread>

#include "backhaul/error.hpp"
#include "backhaul/scheduler.hpp"
#include "backhaul/validator.hpp"

namespace backhaul {

namespace {

std::string column(const std::string& setting, Objective objective) { return setting + ":" + to_string(objective); }

// Shortest round-trip representation, identical across runs.
std::string number(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return ec == std::errc{} ? std::string(buf, end) : std::string{};
}

class CsvWriter {
 public:
  explicit CsvWriter(const std::filesystem::path& path) : path_(path), out_(path) {
    if (!out_) throw Error(ErrorCode::Io, "cannot write " + path.string());
  }
  void row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << cells[i];
    out_ << '\n';
  }
  void close() {
    out_.close();
    if (!out_) throw Error(ErrorCode::Io, "write failed for " + path_.string());
  }

 private:
  std::filesystem::path path_;
  std::ofstream out_;
};

RunOutcome evaluate(const NetworkTopology& topo, const std::string& label, Objective objective,
                    const DemandSolution& solution) {
  RunOutcome o;
  o.setting = label;
  o.objective = objective;
  o.solved = true;
  o.solution = solution;
  o.aggregate = solution.per_bs_demand.aggregate();
  try {
    o.jain = jain_index(solution.per_bs_demand);
  } catch (const Error&) {
  }
  const auto chains = min_radio_chains(topo, solution.p_first);
  for (const auto& s : topo.stations) {
    const int need = chains.at(s.id);
    if (s.kind == StationKind::Macro)
      o.macro_chains = need;
    else
      o.max_small_chains = std::max(o.max_small_chains, need);
  }
  try {
    const auto sched = schedule(topo, solution.p_first);
    o.scheduled = true;
    const auto report = validate_schedule(topo, solution.p_first, solution.per_bs_demand, sched);
    o.violations = report.violations.size();
    o.realized_d_b = report.realized_d_b;
  } catch (const Error& e) {
    o.schedule_error = e.what();
  }
  return o;
}

std::vector<std::string> run_columns(const ExperimentSpec& spec) {
  std::vector<std::string> cols;
  for (const auto& s : spec.settings)
    for (auto obj : spec.objectives) cols.push_back(column(s, obj));
  return cols;
}

double mean(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  double total = 0.0;
  for (double x : v) total += x;
  return total / static_cast<double>(v.size());
}

}  // namespace

ExperimentSpec experiment_spec_from_json(const Json& doc) {
  if (!doc.is_object()) throw Error(ErrorCode::Parse, "experiment spec must be an object");
  static const std::set<std::string> known{"settings", "objectives", "num_trials", "generator"};
  for (const auto& [k, _] : doc.items())
    if (!known.count(k)) throw Error(ErrorCode::Parse, "unknown experiment spec key \"" + k + "\"");
  ExperimentSpec spec;
  try {
    if (doc.contains("settings")) spec.settings = doc.at("settings").get<std::vector<std::string>>();
    if (doc.contains("objectives")) {
      spec.objectives.clear();
      for (const auto& name : doc.at("objectives").get<std::vector<std::string>>()) spec.objectives.push_back(parse_objective(name));
    }
    spec.num_trials = doc.value("num_trials", spec.num_trials);
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("experiment spec: ") + e.what());
  }
  if (doc.contains("generator")) spec.generator = generator_config_from_json(doc.at("generator"));
  if (spec.settings.empty()) throw Error(ErrorCode::InvalidArgument, "experiment spec lists no settings");
  if (spec.objectives.empty()) throw Error(ErrorCode::InvalidArgument, "experiment spec lists no objectives");
  if (spec.num_trials < 1) throw Error(ErrorCode::InvalidArgument, "num_trials must be at least 1");
  for (const auto& s : spec.settings) parse_setting(s);
  return spec;
}

Json to_json(const ExperimentSpec& spec) {
  std::vector<std::string> objectives;
  for (auto o : spec.objectives) objectives.emplace_back(to_string(o));
  return {{"settings", spec.settings},
          {"objectives", objectives},
          {"num_trials", spec.num_trials},
          {"generator", to_json(spec.generator)}};
}

std::uint64_t trial_seed(std::uint64_t batch_seed, int trial) {
  std::uint64_t z = batch_seed ^ static_cast<std::uint64_t>(trial);
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

const RunOutcome* TrialResult::find(const std::string& setting, Objective objective) const {
  for (const auto& r : runs)
    if (r.setting == setting && r.objective == objective) return &r;
  return nullptr;
}

TrialResult run_trial(const ExperimentSpec& spec, int trial) {
  TrialResult result;
  result.trial = trial;
  result.seed = trial_seed(spec.generator.seed, trial);
  GeneratorConfig config = spec.generator;
  config.seed = result.seed;
  result.topology = generate(config);

  for (const auto& label : spec.settings) {
    const auto named = parse_setting(label);
    const auto topo = for_setting(result.topology, named);
    std::optional<DemandSolution> equal;
    try {
      equal = solve_equal_demand(topo, named.setting);
      result.max_demand[label] = *equal->d_b_gbps;
    } catch (const Error&) {
    }
    for (auto objective : spec.objectives) {
      try {
        const auto solution = objective == Objective::EqualDemand && equal
                                  ? *equal
                                  : solve_objective(topo, named.setting, objective);
        result.runs.push_back(evaluate(topo, label, objective, solution));
      } catch (const Error& e) {
        RunOutcome o;
        o.setting = label;
        o.objective = objective;
        o.error = e.what();
        result.runs.push_back(std::move(o));
      }
    }
  }
  return result;
}

std::vector<TrialResult> run_experiment(const ExperimentSpec& spec, int jobs) {
  std::vector<TrialResult> results(static_cast<std::size_t>(spec.num_trials));
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (int t = next++; t < spec.num_trials; t = next++) {
      try {
        results[static_cast<std::size_t>(t)] = run_trial(spec, t);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const int threads = std::clamp(jobs, 1, spec.num_trials);
  std::vector<std::thread> pool;
  for (int i = 1; i < threads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
  return results;
}

Json experiment_summary(const ExperimentSpec& spec, const std::vector<TrialResult>& trials) {
  Json max_demand = Json::object();
  for (const auto& s : spec.settings) {
    std::vector<double> v;
    for (const auto& t : trials)
      if (auto it = t.max_demand.find(s); it != t.max_demand.end()) v.push_back(it->second);
    max_demand[s] = {{"mean_gbps", mean(v)}, {"trials", v.size()}};
  }

  Json runs = Json::object();
  std::size_t scheduled_total = 0;
  std::size_t realized_total = 0;
  std::size_t solved_total = 0;
  for (const auto& s : spec.settings) {
    for (auto obj : spec.objectives) {
      std::vector<double> aggregate;
      std::vector<double> jain;
      std::map<int, int> macro_hist;
      std::map<int, int> small_hist;
      std::size_t solved = 0;
      std::size_t scheduled = 0;
      std::size_t realized = 0;
      for (const auto& t : trials) {
        const auto* r = t.find(s, obj);
        if (!r || !r->solved) continue;
        ++solved;
        aggregate.push_back(r->aggregate);
        if (r->jain) jain.push_back(*r->jain);
        ++macro_hist[r->macro_chains];
        ++small_hist[r->max_small_chains];
        scheduled += r->scheduled ? 1 : 0;
        realized += r->realized() ? 1 : 0;
      }
      solved_total += solved;
      scheduled_total += scheduled;
      realized_total += realized;
      Json macro = Json::object();
      for (const auto& [k, n] : macro_hist) macro[std::to_string(k)] = n;
      Json small = Json::object();
      for (const auto& [k, n] : small_hist) small[std::to_string(k)] = n;
      runs[column(s, obj)] = {
          {"solved", solved},
          {"mean_aggregate_gbps", mean(aggregate)},
          {"mean_jain", mean(jain)},
          {"min_radio_chains_macro", macro},
          {"min_radio_chains_small_max", small},
          {"scheduled", scheduled},
          {"realized", realized},
          {"realizability", solved ? static_cast<double>(realized) / static_cast<double>(solved) : 0.0},
      };
    }
  }
  return {{"spec", to_json(spec)},
          {"trials", trials.size()},
          {"max_demand", max_demand},
          {"runs", runs},
          {"realizability",
           {{"solved", solved_total},
            {"scheduled", scheduled_total},
            {"realized", realized_total},
            {"rate", solved_total ? static_cast<double>(realized_total) / static_cast<double>(solved_total) : 0.0}}}};
}

void write_experiment(const std::filesystem::path& dir, const ExperimentSpec& spec,
                      const std::vector<TrialResult>& trials) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::Io, "cannot create " + dir.string() + ": " + ec.message());

  const auto cols = run_columns(spec);
  auto header = [](std::vector<std::string> names) {
    names.insert(names.begin(), {"trial", "seed"});
    return names;
  };
  auto lead = [](const TrialResult& t) { return std::vector<std::string>{std::to_string(t.trial), std::to_string(t.seed)}; };

  {
    CsvWriter csv(dir / "max_demand_by_setting.csv");
    csv.row(header(spec.settings));
    for (const auto& t : trials) {
      auto row = lead(t);
      for (const auto& s : spec.settings) {
        auto it = t.max_demand.find(s);
        row.push_back(it == t.max_demand.end() ? "" : number(it->second));
      }
      csv.row(row);
    }
    csv.close();
  }

  auto per_run = [&](const char* file, auto&& cell) {
    CsvWriter csv(dir / file);
    csv.row(header(cols));
    for (const auto& t : trials) {
      auto row = lead(t);
      for (const auto& s : spec.settings)
        for (auto obj : spec.objectives) {
          const auto* r = t.find(s, obj);
          row.push_back(r && r->solved ? cell(*r) : std::string{});
        }
      csv.row(row);
    }
    csv.close();
  };
  per_run("aggregate_by_objective.csv", [](const RunOutcome& r) { return number(r.aggregate); });
  per_run("jain_by_objective.csv", [](const RunOutcome& r) { return r.jain ? number(*r.jain) : std::string{}; });

  {
    CsvWriter csv(dir / "min_radio_chains_hist.csv");
    std::vector<std::string> names;
    for (const auto& c : cols) {
      names.push_back(c + ":macro");
      names.push_back(c + ":small_max");
    }
    csv.row(header(names));
    for (const auto& t : trials) {
      auto row = lead(t);
      for (const auto& s : spec.settings)
        for (auto obj : spec.objectives) {
          const auto* r = t.find(s, obj);
          const bool ok = r && r->solved;
          row.push_back(ok ? std::to_string(r->macro_chains) : "");
          row.push_back(ok ? std::to_string(r->max_small_chains) : "");
        }
      csv.row(row);
    }
    csv.close();
  }

  write_json_file(dir / "summary.json", experiment_summary(spec, trials));
}

}  // namespace backhaul
