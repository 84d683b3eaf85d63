#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace watson {

enum class ErrorCode {
  argument_not_unity,
  divergent_series,
  denominator_pole,
  invalid_series,
  not_terminating,
  outside_radius,
  divergence_region,
  numerator_pole,
  parameter_pole,
  unknown_id,
  precondition_violation,
  unsupported_index,
  sampling_exhausted,
  unknown_relation,
  parse_error,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Library error carrying a machine-readable code next to the message.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::argument_not_unity: return "argument_not_unity";
    case ErrorCode::divergent_series: return "divergent_series";
    case ErrorCode::denominator_pole: return "denominator_pole";
    case ErrorCode::invalid_series: return "invalid_series";
    case ErrorCode::not_terminating: return "not_terminating";
    case ErrorCode::outside_radius: return "outside_radius";
    case ErrorCode::divergence_region: return "divergence_region";
    case ErrorCode::numerator_pole: return "numerator_pole";
    case ErrorCode::parameter_pole: return "parameter_pole";
    case ErrorCode::unknown_id: return "unknown_id";
    case ErrorCode::precondition_violation: return "precondition_violation";
    case ErrorCode::unsupported_index: return "unsupported_index";
    case ErrorCode::sampling_exhausted: return "sampling_exhausted";
    case ErrorCode::unknown_relation: return "unknown_relation";
    case ErrorCode::parse_error: return "parse_error";
  }
  return "unknown";
}

}  // namespace watson
