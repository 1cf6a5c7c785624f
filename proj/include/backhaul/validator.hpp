#pragma once

// Independent feasibility check of a Schedule. Everything is recomputed from
// the per-link interval lists; per_bs_chains is only checked for overlaps.

#include <map>
#include <string>
#include <vector>

#include "backhaul/model.hpp"
#include "backhaul/scheduler.hpp"

namespace backhaul {

enum class ScheduleViolationKind {
  ChainOverlap,
  InterferenceOverlap,
  FootprintMismatch,
  ActiveOutsideFootprint,
  RatioMismatch,
  EndpointOverlap,
  CapacityShortfall,
  InvalidChain,       // chain index outside [0, radio_chains)
  MalformedInterval,  // not a sub-interval of [0, 1] with start < end
  InvalidInput,       // topology, p_first or demands unusable
};

const char* to_string(ScheduleViolationKind kind);

struct ScheduleViolation {
  ScheduleViolationKind kind;
  std::string detail;
};

struct ValidationReport {
  std::vector<ScheduleViolation> violations;
  double realized_d_b = 0.0;
  std::map<int, double> realized_rates;

  bool feasible() const { return violations.empty(); }
  std::size_t count(ScheduleViolationKind kind) const;
};

inline constexpr double kIntervalTolerance = 1e-9;
inline constexpr double kRateTolerance = 1e-6;

// Never throws on bad input; every finding lands in the report.
ValidationReport validate_schedule(const NetworkTopology& topology, const std::map<int, double>& p_first,
                                   const TrafficDemand& demands, const Schedule& sched);

// (sum D)^2 / (N sum D^2). Throws Error(InvalidArgument) for an empty or
// negative demand vector and Error(AllZeroDemands) when every entry is zero.
double jain_index(const TrafficDemand& demands);

}  // namespace backhaul
