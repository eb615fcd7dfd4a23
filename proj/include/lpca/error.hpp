#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lpca {

enum class ErrorCode {
  bad_dimensions,
  symbol_out_of_range,
  not_permutive,
  alphabet_mismatch,
  budget_exceeded,
  tail_not_fixed,
  tail_not_periodic,
  precondition_violated,
  overflow,
  not_additive_form,
  no_witness_found,
  parse_error,
};

std::string_view to_string(ErrorCode code);

/// Failure raised by library operations. The code identifies the contract
/// that was violated; the message carries the specifics.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace lpca
