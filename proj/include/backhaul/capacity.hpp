#pragma once

#include "backhaul/model.hpp"

namespace backhaul {

// Frame of 4.16 us slots, 6912 subcarriers, 256-QAM (8 bits/symbol), no
// coding overhead: 6912 * 8 / 4.16 Mbps, kept at full precision.
inline constexpr double kSlotMicros = 4.16;
inline constexpr int kSubcarriers = 6912;
inline constexpr int kBitsPerSymbol = 8;
inline constexpr double kDefaultPhyRateGbps = kSubcarriers * kBitsPerSymbol / kSlotMicros / 1000.0;

struct LinkCapacityProfile {
  int link_id = 0;
  double capacity_gbps = 0.0;  // C_i
  double p_first_max = 1.0;    // P_i^f
  double p_last_max = 1.0;     // P_i^l
};

// Raw rate in Gbps. Throws Error(NonPositiveInput).
double physical_rate(double slot_us, int subcarriers, int bits_per_symbol);

// Single-hop: the physical rate with both endpoints active all frame.
// Multi-hop: odd and even hops alternate, so each endpoint physical link is
// active half of the link's schedule and the end-to-end rate halves.
// Throws Error(InvalidHopCount) or Error(NonPositiveInput).
LinkCapacityProfile link_profile(int hop_count, double phy_rate_gbps);

// Link with hop count, rate and the derived profile filled in.
LogicalLink make_link(int parent, int child, int hop_count, double phy_rate_gbps = kDefaultPhyRateGbps);

}  // namespace backhaul
