#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace backhaul {

enum class ErrorCode {
  NonPositiveInput,
  InvalidHopCount,
  InvalidArgument,
  DimensionMismatch,
  InvalidTopology,
  UnknownBS,
  MissingLink,
  InterferenceNotMinimal,
  InsufficientRadioChains,
  Infeasible,
  InfeasibleFloor,
  Unbounded,
  IterationLimit,
  PlacementFailure,
  InconsistentInput,
  AllZeroDemands,
  InfeasibleConfig,
  Io,
  Parse,
};

std::string_view to_string(ErrorCode code);

// Library-wide exception. `subject` carries the offending BS or link id when
// one exists (-1 otherwise).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what, int subject = -1)
      : std::runtime_error(what), code_(code), subject_(subject) {}

  ErrorCode code() const noexcept { return code_; }
  int subject() const noexcept { return subject_; }

 private:
  ErrorCode code_;
  int subject_;
};

}  // namespace backhaul
