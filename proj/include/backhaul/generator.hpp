#pragma once

// Seeded random tree topologies.
//
// Randomness comes from std::mt19937_64 (fully specified by the standard) and
// the integer/real draws below are written out by hand, so a seed yields the
// same topology on every platform and standard library.

#include <cstdint>
#include <map>

#include "backhaul/capacity.hpp"
#include "backhaul/formulations.hpp"
#include "backhaul/model.hpp"

namespace backhaul {

struct GeneratorConfig {
  std::uint64_t seed = 1;
  int num_small_bs = 20;
  int macro_degree = 8;
  int max_small_children = 2;
  // Hop count -> weight; weights need not sum to one.
  std::map<int, double> hop_distribution{{1, 0.2}, {2, 0.4}, {3, 0.4}};
  int interference_pair_budget = 4;
  double phy_rate_gbps = kDefaultPhyRateGbps;
};

// Macro BS id 0, small cells 1..num_small_bs. The first macro_degree small
// cells hang off the macro; every later one picks a uniformly random earlier
// small cell that still has room for a child. Radio chains are set to the
// attached-link count of each BS. Throws Error(InfeasibleConfig).
NetworkTopology generate(const GeneratorConfig& config);

// Radio chains for a setting: Enough gives each BS one chain per attached
// link; LR(k) gives small cells 1 and the macro k; a bare LR label keeps the
// counts already present. Interference pairs are left alone.
void assign_radio_chains(NetworkTopology& topology, const NamedSetting& setting);

// Copy of `topology` prepared for a setting: chains assigned and, for MI
// settings, interference pairs removed.
NetworkTopology for_setting(const NetworkTopology& topology, const NamedSetting& setting);

}  // namespace backhaul
