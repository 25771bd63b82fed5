#pragma once

#include <stdexcept>
#include <string>

namespace tubeband {

// Values double as CLI exit codes where the CLI contract defines one.
enum class ErrorCode : int {
  invalid_argument = 2,
  regime_violation = 3,
  under_resolved = 4,
  acceptance_failed = 5,
  pole = 6,
  unsupported = 7,
  edge_ambiguity = 8,
  numerical = 9,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace tubeband
