#pragma once

#include <stdexcept>
#include <string>

namespace repfree {

// Raised by the text-format readers. `line()` is 1-based and refers to the
// input the reader was given, so callers can prefix a file name.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& message)
      : std::runtime_error(message), line_(line) {}

  int line() const { return line_; }

 private:
  int line_;
};

// Raised when a bounded search or enumeration runs past its node budget.
// Deliberately distinct from "no result exists".
class BudgetExceeded : public std::runtime_error {
 public:
  explicit BudgetExceeded(const std::string& message)
      : std::runtime_error(message) {}
};

}  // namespace repfree
