#pragma once

// Depth-first construction of per-radio-chain transmission intervals that
// realize a set of first-hop activity fractions {p_i^f}.
//
// Time is one normalized, periodic frame [0,1). For each logical link L_i:
//   footprint    the time its end-to-end pipeline runs, length p_i^f / P_i^f;
//                split into the parent-side active part and the pause part
//   parent side  first physical link active at the parent BS, length p_i^f
//   child side   last physical link active at the child BS, length
//                p_i^f * P_i^l / P_i^f, taken from the pause part for
//                multi-hop links and equal to the parent side for single-hop
// Active time occupies a radio chain at that BS; pause time only matters for
// interference, where footprints of interfering links must not meet.

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "backhaul/model.hpp"

namespace backhaul {

enum class IntervalKind { Active, Pause };

struct TimeInterval {
  double start = 0.0;
  double end = 0.0;
  IntervalKind kind = IntervalKind::Active;
};

struct ChainInterval {
  int chain = 0;  // 0-based radio chain index at the BS
  double start = 0.0;
  double end = 0.0;
};

struct Interval {
  double start = 0.0;
  double end = 0.0;
};

struct LinkSchedule {
  int link_id = 0;
  std::vector<TimeInterval> footprint;
  std::vector<ChainInterval> parent_side;
  std::vector<ChainInterval> child_side;
};

struct Schedule {
  std::map<int, LinkSchedule> per_link;
  // (BS id, chain index) -> sorted active intervals.
  std::map<std::pair<int, int>, std::vector<Interval>> per_bs_chains;
  // Places where the construction departed from the textbook step, e.g. an
  // interfering child link that had to spill past the first radio chain.
  std::vector<std::string> deviations;
};

// Throws Error(PlacementFailure) with the link id as subject when a link's
// active or pause time cannot be fitted, Error(InconsistentInput) when some
// p_i^f lies outside [0, P_i^f], Error(MissingLink) when a link has no value,
// and Error(InvalidTopology) for topologies failing either model validator.
Schedule schedule(const NetworkTopology& topology, const std::map<int, double>& p_first);

// c_i = min(realized p^f / P^f, realized p^l / P^l) * C_i, computed from the
// interval lengths alone. Links absent from the schedule get rate 0.
std::map<int, double> achieved_rates(const NetworkTopology& topology, const Schedule& sched);

}  // namespace backhaul
