#include "backhaul/capacity.hpp"

#include <string>

#include "backhaul/error.hpp"

namespace backhaul {

double physical_rate(double slot_us, int subcarriers, int bits_per_symbol) {
  if (!(slot_us > 0.0) || subcarriers <= 0 || bits_per_symbol <= 0)
    throw Error(ErrorCode::NonPositiveInput, "physical_rate: all inputs must be positive");
  return static_cast<double>(subcarriers) * bits_per_symbol / slot_us / 1000.0;
}

LinkCapacityProfile link_profile(int hop_count, double phy_rate_gbps) {
  if (hop_count < 1)
    throw Error(ErrorCode::InvalidHopCount, "hop count " + std::to_string(hop_count) + " is below 1");
  if (!(phy_rate_gbps > 0.0)) throw Error(ErrorCode::NonPositiveInput, "physical rate must be positive");
  if (hop_count == 1) return {0, phy_rate_gbps, 1.0, 1.0};
  return {0, phy_rate_gbps / 2.0, 0.5, 0.5};
}

LogicalLink make_link(int parent, int child, int hop_count, double phy_rate_gbps) {
  const auto profile = link_profile(hop_count, phy_rate_gbps);
  LogicalLink link;
  link.id = child;
  link.parent = parent;
  link.child = child;
  link.hop_count = hop_count;
  link.phy_rate_gbps = phy_rate_gbps;
  link.capacity_gbps = profile.capacity_gbps;
  link.p_first_max = profile.p_first_max;
  link.p_last_max = profile.p_last_max;
  return link;
}

}  // namespace backhaul
