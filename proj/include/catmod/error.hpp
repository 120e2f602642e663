#pragma once

#include <stdexcept>
#include <string>

namespace catmod {

enum class ErrorCode {
  invalid_argument,
  not_prime,
  non_invertible,
  overflow_range,
  state_cap_exceeded,
  not_power_series,
  no_qualifying_family,
  ambiguous_family,
  property_violation,
};

/// Exception type thrown by every catmod operation. The code is what the C API
/// maps onto its status values; the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace catmod
