#pragma once

// LP formulations of the maximum supportable backhaul demand.
//
// Variables per small-cell BS / link i:
//   D_B      equal demand of every small cell (equal-demand objective)
//   D[i]     individual demand of B_i (aggregate objectives)
//   p_f[i]   fraction of the frame the first physical link of L_i is active
//
// The last-hop fraction is tied to the first one by p_i^l / P_i^l = p_i^f / P_i^f
// (a link never benefits from giving one endpoint more time than the other),
// so every program here is a plain LP with p_f as the only schedule variables.

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "backhaul/lp.hpp"
#include "backhaul/model.hpp"

namespace backhaul {

enum class InterferenceRegime { Minimal, Limited };
enum class RadioRegime { Enough, Limited };

struct Setting {
  InterferenceRegime interference = InterferenceRegime::Minimal;
  RadioRegime radio_chains = RadioRegime::Enough;
};

// A setting label such as "MI-ER" or "LI-LR(2)". The parenthesised count is
// the macro BS radio-chain budget; bare "MI-LR"/"LI-LR" keep the chain counts
// already present in the topology.
struct NamedSetting {
  std::string label;
  Setting setting;
  std::optional<int> macro_chains;
};

// Throws Error(InvalidArgument) for unknown labels.
NamedSetting parse_setting(std::string_view label);

// MI-ER, MI-LR(1), MI-LR(2), LI-ER, LI-LR(1), LI-LR(2).
const std::vector<std::string>& standard_setting_labels();

enum class Objective { EqualDemand, Aggregate, AggregateFair };

const char* to_string(Objective objective);
// Accepts equal_demand | aggregate | aggregate_fair.
Objective parse_objective(std::string_view name);

// An LP plus the variable layout needed to decode its solution.
struct Formulation {
  lp::LinearProgram program;
  int equal_demand_var = -1;       // D_B, equal-demand programs only
  std::map<int, int> demand_var;   // BS id -> D[i], aggregate programs only
  std::map<int, int> p_first_var;  // link id -> p_f[i]; empty for MI-ER
};

Formulation build_equal_demand_lp(const NetworkTopology& topology, const Setting& setting);
Formulation build_aggregate_lp(const NetworkTopology& topology, const Setting& setting);
Formulation build_fair_aggregate_lp(const NetworkTopology& topology, const Setting& setting, double d_b_floor);

struct DemandSolution {
  Objective objective = Objective::EqualDemand;
  // Equal-demand optimum, or the per-BS floor used by the fair objective.
  std::optional<double> d_b_gbps;
  TrafficDemand per_bs_demand;
  std::map<int, double> p_first;
  std::map<int, double> p_last;
  double lp_objective = 0.0;
  int pivots = 0;
};

// Each solve throws Error(Infeasible) / Error(Unbounded) when the LP has no
// optimum and the build errors documented above. The reported p_first is the
// smallest fraction that still carries the solved demand on every link.
DemandSolution solve_equal_demand(const NetworkTopology& topology, const Setting& setting);
DemandSolution solve_aggregate(const NetworkTopology& topology, const Setting& setting);
// Throws Error(InfeasibleFloor) when no allocation meets the floor.
DemandSolution solve_fair_aggregate(const NetworkTopology& topology, const Setting& setting, double d_b_floor);
// Equal-demand solve followed by the fair aggregate solve at that floor.
DemandSolution solve_two_step_fair(const NetworkTopology& topology, const Setting& setting);
DemandSolution solve_objective(const NetworkTopology& topology, const Setting& setting, Objective objective);

// Ceil of the active time summed over the attached endpoint physical links,
// at least 1. Throws Error(MissingLink) if p_first lacks a link.
std::map<int, int> min_radio_chains(const NetworkTopology& topology, const std::map<int, double>& p_first);

// Traffic carried by each link: sum of demands in the subtree it feeds.
std::map<int, double> link_loads(const Tree& tree, const TrafficDemand& demand);

}  // namespace backhaul
