#include "gausscap/errors.hpp"

namespace gausscap {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NonPositiveDefinite: return "NonPositiveDefinite";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NegativeArgument: return "NegativeArgument";
    case ErrorCode::InvalidChannel: return "InvalidChannel";
    case ErrorCode::NotBlockForm: return "NotBlockForm";
    case ErrorCode::NonThermalNoise: return "NonThermalNoise";
    case ErrorCode::UnphysicalOutput: return "UnphysicalOutput";
    case ErrorCode::SingularNoise: return "SingularNoise";
    case ErrorCode::NoFeasibleWaterlevel: return "NoFeasibleWaterlevel";
    case ErrorCode::ZeroNoiseClassical: return "ZeroNoiseClassical";
    case ErrorCode::InsufficientEnvironment: return "InsufficientEnvironment";
    case ErrorCode::RectangularActive: return "RectangularActive";
  }
  return "Unknown";
}

ErrorCategory category_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::InsufficientEnvironment:
    case ErrorCode::RectangularActive:
      return ErrorCategory::ensemble;
    case ErrorCode::NonPositiveDefinite:
    case ErrorCode::NegativeArgument:
    case ErrorCode::InvalidChannel:
    case ErrorCode::UnphysicalOutput:
    case ErrorCode::SingularNoise:
    case ErrorCode::NoFeasibleWaterlevel:
    case ErrorCode::ZeroNoiseClassical:
      return ErrorCategory::unphysical;
    default:
      return ErrorCategory::input;
  }
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

}  // namespace gausscap
