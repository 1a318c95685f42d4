#include "fpuwaves/error.hpp"

namespace fpuwaves {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::non_commensurate: return "NonCommensurate";
    case ErrorCode::domain_too_small: return "DomainTooSmall";
    case ErrorCode::grid_mismatch: return "GridMismatch";
    case ErrorCode::hat_on_line: return "HatOnLine";
    case ErrorCode::unknown_name: return "UnknownName";
    case ErrorCode::bad_params: return "BadParams";
    case ErrorCode::radius_exceeded: return "RadiusExceeded";
    case ErrorCode::trivial_minimiser: return "TrivialMinimiser";
    case ErrorCode::zero_gradient: return "ZeroGradient";
    case ErrorCode::bad_descriptor: return "BadDescriptor";
    case ErrorCode::not_genuinely_superquadratic: return "NotGenuinelySuperquadratic";
    case ErrorCode::non_integer_period: return "NonIntegerPeriod";
    case ErrorCode::unstable: return "Unstable";
    case ErrorCode::io: return "IoError";
    case ErrorCode::config: return "ConfigError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

}  // namespace fpuwaves
