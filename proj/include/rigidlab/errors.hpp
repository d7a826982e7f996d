#pragma once

#include <stdexcept>
#include <string>

namespace rigidlab {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class RangeError : public Error {
 public:
  using Error::Error;
};

/// Invalid or infeasible parameters (family parameters, prime size, |S| != d, ...).
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Rigidity questions need n >= d + 1.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Exact/brute-force oracles refuse inputs beyond their size cap.
class CapacityError : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Raised when a graph that should be d-closed has a vertex with >= d
/// neighbours in a clique but is not joined to all of it.
class ClosureViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace rigidlab
