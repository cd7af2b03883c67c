#pragma once

#include <stdexcept>
#include <string>

namespace blochprior {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A volume element that cannot be normalized over the requested support.
class ImproperPrior : public Error {
 public:
  using Error::Error;
};

class OutOfSupport : public Error {
 public:
  using Error::Error;
};

/// Relative entropy requested between densities whose supports differ.
class SupportMismatch : public Error {
 public:
  using Error::Error;
};

class ZeroEvidence : public Error {
 public:
  using Error::Error;
};

class NoSignChange : public Error {
 public:
  using Error::Error;
};

class DivisionByZero : public Error {
 public:
  using Error::Error;
};

class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// Malformed textual input (prior labels, record specs).
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace blochprior
