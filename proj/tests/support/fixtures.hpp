#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "backhaul/capacity.hpp"
#include "backhaul/lp.hpp"
#include "backhaul/model.hpp"

namespace fixtures {

using namespace backhaul;

// Macro 0 with `children` leaves 1..children, every link `hops` long.
NetworkTopology star(int children, int hops = 1, int macro_chains = 1, double phy = kDefaultPhyRateGbps);

// M -> B1 -> B2 with both links multi-hop.
NetworkTopology chain(double phy = kDefaultPhyRateGbps);

// Single link M -> B1.
NetworkTopology single_link(int hops = 1, double phy = kDefaultPhyRateGbps);

// 17 links: 8 at the macro, the rest one or two levels below, mixed hops.
NetworkTopology seventeen_link_tree();

// Random topology with 1..max_links links, interference pairs and chain
// counts, valid for both model validators.
NetworkTopology random_small_topology(std::mt19937_64& rng, int max_links);

// Random LP with 1..max_vars variables, small integer data, mixed relations
// and bounds; some are degenerate, infeasible or unbounded.
lp::LinearProgram random_lp(std::mt19937_64& rng, int max_vars);

// Uniform integer in [lo, hi].
int uniform(std::mt19937_64& rng, int lo, int hi);

}  // namespace fixtures
