#include "densfp/error.hpp"

namespace densfp {

int exit_code(ErrorCategory category) noexcept {
  switch (category) {
    case ErrorCategory::validation:
      return 2;
    case ErrorCategory::numerical:
      return 3;
    case ErrorCategory::precondition:
      return 4;
  }
  return 1;
}

ParseError::ParseError(int line, const std::string& message)
    : Error(ErrorCategory::validation, "line " + std::to_string(line) + ": " + message),
      line_(line),
      message_(message) {}

}  // namespace densfp
