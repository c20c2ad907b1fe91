#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace morphex {

/// Base class of every error the engine raises.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Syntax error in rule or action source. Lines and columns are 1-based.
class ParseError : public Error {
public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

private:
  std::size_t line_;
  std::size_t column_;
};

/// Model or file content violating a schema or a cross-reference invariant.
/// `path` locates the offending field, e.g. `tagTypes[2].formula.terms[0].feature`.
class ValidationError : public Error {
public:
  ValidationError(std::string path, const std::string& what)
      : Error(path.empty() ? what : path + ": " + what), path_(std::move(path)) {}

  const std::string& path() const noexcept { return path_; }

private:
  std::string path_;
};

class BoundsError : public Error {
public:
  using Error::Error;
};

/// NFA simulation ran past its step budget.
class BudgetExceeded : public Error {
public:
  BudgetExceeded(std::string rule, std::size_t budget)
      : Error("rule '" + rule + "' exceeded the simulation step budget of " +
              std::to_string(budget)),
        rule_(std::move(rule)) {}

  const std::string& rule() const noexcept { return rule_; }

private:
  std::string rule_;
};

/// Failure while executing an action script.
class ActionError : public Error {
public:
  using Error::Error;
};

}  // namespace morphex
