#pragma once

#include <stdexcept>
#include <string>

namespace gcr {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A graph, signature or morphism violates its structural invariants.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// An operation was called outside its documented precondition
/// (mismatched domains, non-injective input where M is required, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A rule cannot be applied at the given match.
class NotApplicable : public Error {
 public:
  using Error::Error;
};

/// A construction produced a span whose legs are not both injective.
class NotARule : public Error {
 public:
  using Error::Error;
};

/// Malformed input file; line and column are 1-based, 0 when unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line = 0, std::size_t column = 0)
      : Error(line ? what + " (line " + std::to_string(line) + ", column " + std::to_string(column) + ")" : what),
        line_(line),
        column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace gcr
