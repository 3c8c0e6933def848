#pragma once

#include <stdexcept>
#include <string>

namespace gradering {

/// Base class for every error the workbench raises on bad input or refusal.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed ring specification or document; carries the offending field path.
class SpecError : public Error {
public:
  SpecError(std::string field_path, const std::string& what)
      : Error(field_path.empty() ? what : field_path + ": " + what),
        field_path_(std::move(field_path)) {}

  const std::string& field_path() const { return field_path_; }

private:
  std::string field_path_;
};

/// Document syntax error with 1-based line and column.
class ParseError : public Error {
public:
  ParseError(std::size_t line, std::size_t column, const std::string& what)
      : Error("line " + std::to_string(line) + ", column " +
              std::to_string(column) + ": " + what),
        line_(line), column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

private:
  std::size_t line_;
  std::size_t column_;
};

/// Operation invoked outside its contract (mixed rings, uncertified grading,
/// zero ideal where a nonzero one is required, ...).
class PreconditionError : public Error {
public:
  using Error::Error;
};

/// A linear-solver path was reached with a composite modulus.
class UnsupportedModulusError : public Error {
public:
  using Error::Error;
};

/// An enumeration would exceed its budget; refused instead of truncated.
class BudgetExceededError : public Error {
public:
  using Error::Error;
};

} // namespace gradering
