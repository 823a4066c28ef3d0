// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mawtap {

enum class Errc {
  invalid_matrix,
  dimension_mismatch,
  inconsistent_system,
  not_positive_definite,
  invalid_config,
  invalid_eve_count,
  invalid_power_policy,
  degenerate_config,
  alignment_infeasible,
  plan_mismatch,
  geometry_not_verified,
  code_too_large,
  invalid_code_parameters,
  invalid_message,
  decode_failure,
  enumeration_budget_exceeded,
};

constexpr std::string_view to_string(Errc e) noexcept {
  switch (e) {
    case Errc::invalid_matrix: return "InvalidMatrix";
    case Errc::dimension_mismatch: return "DimensionMismatch";
    case Errc::inconsistent_system: return "InconsistentSystem";
    case Errc::not_positive_definite: return "NotPositiveDefinite";
    case Errc::invalid_config: return "InvalidConfig";
    case Errc::invalid_eve_count: return "InvalidEveCount";
    case Errc::invalid_power_policy: return "InvalidPowerPolicy";
    case Errc::degenerate_config: return "DegenerateConfig";
    case Errc::alignment_infeasible: return "AlignmentInfeasible";
    case Errc::plan_mismatch: return "PlanMismatch";
    case Errc::geometry_not_verified: return "GeometryNotVerified";
    case Errc::code_too_large: return "CodeTooLarge";
    case Errc::invalid_code_parameters: return "InvalidCodeParameters";
    case Errc::invalid_message: return "InvalidMessage";
    case Errc::decode_failure: return "DecodeFailure";
    case Errc::enumeration_budget_exceeded: return "EnumerationBudgetExceeded";
  }
  return "Unknown";
}

/// Single exception type for the library; `code()` identifies the failure.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace mawtap
