// Error taxonomy shared by the whole library.
//
// ParseError      - malformed textual input; carries line and column.
// ValidationError - structurally well-formed data that violates an invariant
//                   (bad multiplication table, non-cocycle, failed witness).
// BudgetExceeded  - a search or enumeration hit its resource budget; carries
//                   a short progress summary so callers can report it.
// UsageError      - bad command-line arguments or option combinations.

#ifndef TORSION_ERROR_HPP
#define TORSION_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace torsion {

class ParseError : public std::runtime_error {
public:
  ParseError(std::string msg, std::size_t line, std::size_t col)
      : std::runtime_error("parse error at line " + std::to_string(line) +
                           ", column " + std::to_string(col) + ": " + msg),
        line_(line), col_(col) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return col_; }

private:
  std::size_t line_;
  std::size_t col_;
};

class ValidationError : public std::runtime_error {
public:
  explicit ValidationError(const std::string& msg)
      : std::runtime_error(msg) {}
};

class BudgetExceeded : public std::runtime_error {
public:
  BudgetExceeded(const std::string& msg, std::string progress)
      : std::runtime_error(msg), progress_(std::move(progress)) {}

  const std::string& progress() const { return progress_; }

private:
  std::string progress_;
};

class UsageError : public std::runtime_error {
public:
  explicit UsageError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace torsion

#endif
