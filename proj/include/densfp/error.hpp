#pragma once

#include <stdexcept>
#include <string>

namespace densfp {

/// Broad failure classes; the CLI maps each to a process exit code.
enum class ErrorCategory {
  validation,   // malformed input, bad arguments (exit 2)
  numerical,    // degenerate geometry, inconsistent results (exit 3)
  precondition  // comparison preconditions not met (exit 4)
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, const std::string& what)
      : std::runtime_error(what), category_(category) {}
  ErrorCategory category() const noexcept { return category_; }

 private:
  ErrorCategory category_;
};

int exit_code(ErrorCategory category) noexcept;

class ParseError : public Error {
 public:
  ParseError(int line, const std::string& message);
  int line() const noexcept { return line_; }
  const std::string& message() const noexcept { return message_; }

 private:
  int line_;
  std::string message_;
};

#define DENSFP_DECLARE_ERROR(Name, Category)                                  \
  class Name : public Error {                                                 \
   public:                                                                    \
    explicit Name(const std::string& what) : Error(ErrorCategory::Category, what) {} \
  }

DENSFP_DECLARE_ERROR(InvalidArgument, validation);
DENSFP_DECLARE_ERROR(SingularBasis, validation);
DENSFP_DECLARE_ERROR(DuplicateMotifPoint, validation);
DENSFP_DECLARE_ERROR(GridMismatch, validation);
DENSFP_DECLARE_ERROR(DeltaTooLarge, validation);
DENSFP_DECLARE_ERROR(DegenerateArrangement, numerical);
DENSFP_DECLARE_ERROR(NonFiniteCell, numerical);
DENSFP_DECLARE_ERROR(ConsistencyError, numerical);
DENSFP_DECLARE_ERROR(NoCommonLattice, precondition);
DENSFP_DECLARE_ERROR(MotifCardinalityMismatch, precondition);

#undef DENSFP_DECLARE_ERROR

}  // namespace densfp
