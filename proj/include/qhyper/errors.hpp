#pragma once

#include <stdexcept>
#include <string>

namespace qhyper {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A denominator factor vanished. Raised by Pochhammer evaluation with negative
// index, series terms, closed forms, and by every division whose divisor is 0.
class PoleError : public Error {
 public:
  using Error::Error;
};

class DivisionByZero : public PoleError {
 public:
  DivisionByZero() : PoleError("division by zero") {}
};

// q in {0, 1}: q-binomials and Pochhammer ratios degenerate.
class DegenerateQ : public Error {
 public:
  using Error::Error;
};

// Arguments outside the domain an operation is defined on.
class DomainError : public Error {
 public:
  using Error::Error;
};

class MissingSymbol : public Error {
 public:
  explicit MissingSymbol(const std::string& name) : Error("missing symbol or index: " + name) {}
};

class NonTerminatingExponent : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace qhyper
