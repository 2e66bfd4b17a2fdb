#ifndef GAUSSCAP_ERRORS_HPP
#define GAUSSCAP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace gausscap {

enum class ErrorCode {
  InvalidArgument,
  ParseError,
  DimensionMismatch,
  NonPositiveDefinite,
  NotHermitian,
  NegativeArgument,
  InvalidChannel,
  NotBlockForm,
  NonThermalNoise,
  UnphysicalOutput,
  SingularNoise,
  NoFeasibleWaterlevel,
  ZeroNoiseClassical,
  InsufficientEnvironment,
  RectangularActive,
};

const char* to_string(ErrorCode code);

/// Broad classes used by front ends to pick an exit status.
enum class ErrorCategory { input, unphysical, ensemble };

ErrorCategory category_of(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);

  ErrorCode code() const noexcept { return code_; }
  ErrorCategory category() const noexcept { return category_of(code_); }

 private:
  ErrorCode code_;
};

}  // namespace gausscap

#endif  // GAUSSCAP_ERRORS_HPP
