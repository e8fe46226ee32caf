#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace dgeom {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t offset, std::vector<std::string> expected = {});

  std::size_t offset() const { return offset_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  std::size_t offset_;
  std::vector<std::string> expected_;
};

/// Unbound symbols, domain errors and division by zero during evaluation.
class EvalError : public Error {
 public:
  using Error::Error;
};

/// A quantity the caller relies on being nonzero could not be decided:
/// its normal form is not literally zero, yet every numeric probe vanished.
class UnresolvedZeroError : public Error {
 public:
  using Error::Error;
};

class ChartMismatch : public Error {
 public:
  using Error::Error;
};

/// Argument outside an operation's contract (degree, arity, dependency).
class DomainError : public Error {
 public:
  using Error::Error;
};

}  // namespace dgeom
