#include "lsnsum/error.hpp"

namespace lsnsum {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::dimension_mismatch: return "DimensionMismatch";
    case ErrorCode::invalid_sigma: return "InvalidSigma";
    case ErrorCode::invalid_correlation: return "InvalidCorrelation";
    case ErrorCode::non_positive_definite: return "NonPositiveDefinite";
    case ErrorCode::singular_matrix: return "SingularMatrix";
    case ErrorCode::empty_reduced_set: return "EmptyReducedSet";
    case ErrorCode::domain_error: return "DomainError";
    case ErrorCode::overflow: return "Overflow";
    case ErrorCode::no_root: return "NoRoot";
    case ErrorCode::non_convergence: return "NonConvergence";
    case ErrorCode::input_error: return "InputError";
  }
  return "Unknown";
}

bool is_input_error(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::dimension_mismatch:
    case ErrorCode::invalid_sigma:
    case ErrorCode::invalid_correlation:
    case ErrorCode::non_positive_definite:
    case ErrorCode::domain_error:
    case ErrorCode::input_error:
      return true;
    default:
      return false;
  }
}

}  // namespace lsnsum
