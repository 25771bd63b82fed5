#include "tubeband/error.hpp"

namespace tubeband {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid argument";
    case ErrorCode::regime_violation: return "matrix-limit regime";
    case ErrorCode::under_resolved: return "under-resolved discretization";
    case ErrorCode::acceptance_failed: return "acceptance failure";
    case ErrorCode::pole: return "pole of M";
    case ErrorCode::unsupported: return "unsupported";
    case ErrorCode::edge_ambiguity: return "edge ambiguity";
    case ErrorCode::numerical: return "numerical failure";
  }
  return "unknown error";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace tubeband
