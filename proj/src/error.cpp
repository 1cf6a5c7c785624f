#include "backhaul/error.hpp"

namespace backhaul {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonPositiveInput: return "NonPositiveInput";
    case ErrorCode::InvalidHopCount: return "InvalidHopCount";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::InvalidTopology: return "InvalidTopology";
    case ErrorCode::UnknownBS: return "UnknownBS";
    case ErrorCode::MissingLink: return "MissingLink";
    case ErrorCode::InterferenceNotMinimal: return "InterferenceNotMinimal";
    case ErrorCode::InsufficientRadioChains: return "InsufficientRadioChains";
    case ErrorCode::Infeasible: return "Infeasible";
    case ErrorCode::InfeasibleFloor: return "InfeasibleFloor";
    case ErrorCode::Unbounded: return "Unbounded";
    case ErrorCode::IterationLimit: return "IterationLimit";
    case ErrorCode::PlacementFailure: return "PlacementFailure";
    case ErrorCode::InconsistentInput: return "InconsistentInput";
    case ErrorCode::AllZeroDemands: return "AllZeroDemands";
    case ErrorCode::InfeasibleConfig: return "InfeasibleConfig";
    case ErrorCode::Io: return "Io";
    case ErrorCode::Parse: return "Parse";
  }
  return "Unknown";
}

}  // namespace backhaul
