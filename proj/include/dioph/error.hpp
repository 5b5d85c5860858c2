#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dioph {

enum class ErrorCode {
  kUsage,
  kParse,
  kDependentInput,
  kNotSaturated,
  kBudgetExceeded,
  kPrecisionExhausted,
  kHypothesisViolated,
  kNonCollinearRequired,
  kOnly3D,
  kOnlyDGe3,
  kNoWitnesses,
  kDomainError,
  kOverflow,
};

constexpr std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kUsage: return "Usage";
    case ErrorCode::kParse: return "Parse";
    case ErrorCode::kDependentInput: return "DependentInput";
    case ErrorCode::kNotSaturated: return "NotSaturated";
    case ErrorCode::kBudgetExceeded: return "BudgetExceeded";
    case ErrorCode::kPrecisionExhausted: return "PrecisionExhausted";
    case ErrorCode::kHypothesisViolated: return "HypothesisViolated";
    case ErrorCode::kNonCollinearRequired: return "NonCollinearRequired";
    case ErrorCode::kOnly3D: return "Only3D";
    case ErrorCode::kOnlyDGe3: return "Only_d_ge_3";
    case ErrorCode::kNoWitnesses: return "NoWitnesses";
    case ErrorCode::kDomainError: return "DomainError";
    case ErrorCode::kOverflow: return "Overflow";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace dioph
