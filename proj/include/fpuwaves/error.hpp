#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fpuwaves {

enum class ErrorCode {
  non_commensurate,
  domain_too_small,
  grid_mismatch,
  hat_on_line,
  unknown_name,
  bad_params,
  radius_exceeded,
  trivial_minimiser,
  zero_gradient,
  bad_descriptor,
  not_genuinely_superquadratic,
  non_integer_period,
  unstable,
  io,
  config,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace fpuwaves
