#pragma once

#include <stdexcept>
#include <string>

namespace onionflow {

enum class ErrorCode {
  kEmptyInput,
  kDegenerateChain,
  kDegenerateInput,
  kOutOfRange,
  kNotPrimitive,
  kDependentVectors,
  kNoCrossing,
  kStepRejected,
  kNonConvergence,
  kCollapsed,
  kResourceLimit,
  kOverflow,
  kInvalidArgument,
  kParse,
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kEmptyInput: return "empty input";
    case ErrorCode::kDegenerateChain: return "degenerate chain";
    case ErrorCode::kDegenerateInput: return "degenerate input";
    case ErrorCode::kOutOfRange: return "coordinate out of range";
    case ErrorCode::kNotPrimitive: return "vector is not primitive";
    case ErrorCode::kDependentVectors: return "vectors are linearly dependent";
    case ErrorCode::kNoCrossing: return "chain does not cross the diagonal";
    case ErrorCode::kStepRejected: return "step rejected";
    case ErrorCode::kNonConvergence: return "did not converge";
    case ErrorCode::kCollapsed: return "curve collapsed";
    case ErrorCode::kResourceLimit: return "resource limit exceeded";
    case ErrorCode::kOverflow: return "integer overflow";
    case ErrorCode::kInvalidArgument: return "invalid argument";
    case ErrorCode::kParse: return "parse error";
  }
  return "unknown error";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace onionflow
