#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lsnsum {

enum class ErrorCode {
  dimension_mismatch,
  invalid_sigma,
  invalid_correlation,
  non_positive_definite,
  singular_matrix,
  empty_reduced_set,
  domain_error,
  overflow,
  no_root,
  non_convergence,
  input_error,
};

std::string_view to_string(ErrorCode code) noexcept;

/// True for failures caused by the caller's data (as opposed to numerical
/// breakdown inside an otherwise valid computation).
bool is_input_error(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace lsnsum
