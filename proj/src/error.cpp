#include "tunclock/error.hpp"

namespace tunclock {

std::string_view status_name(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::dimension: return "dimension-error";
    case ErrorKind::domain: return "domain-error";
    case ErrorKind::range: return "range-error";
    case ErrorKind::horizon: return "horizon";
    case ErrorKind::divergence: return "divergence";
    case ErrorKind::convergence: return "convergence-error";
    case ErrorKind::degenerate: return "degenerate";
    case ErrorKind::unknown_identifier: return "unknown-identifier";
    case ErrorKind::unsupported_profile: return "unsupported-profile";
    case ErrorKind::shape: return "shape-error";
    case ErrorKind::parse: return "parse-error";
    case ErrorKind::format: return "format-error";
  }
  return "error";
}

}  // namespace tunclock
