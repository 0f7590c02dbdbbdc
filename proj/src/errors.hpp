// Exception types used across the library.
#pragma once

#include <stdexcept>
#include <string>

namespace paramils {

/// Malformed input file (space file, instance list, scenario, config file).
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int column, const std::string& what_arg)
      : std::runtime_error("line " + std::to_string(line) + ", col " +
                           std::to_string(column) + ": " + what_arg),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

/// Semantic validation failure (bad scenario value, infeasible default, ...).
class ValidationError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Target execution failed in a configuration-independent way
/// (wrapper binary missing, fork failure). Not charged to the configuration.
class BackendError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Thrown when a time or iteration budget is exhausted mid-evaluation.
/// Search drivers catch this and return the current incumbent.
class BudgetExhausted : public std::runtime_error {
 public:
  explicit BudgetExhausted(const std::string& which)
      : std::runtime_error("budget exhausted: " + which), which_(which) {}

  const std::string& which() const { return which_; }

 private:
  std::string which_;
};

}  // namespace paramils
