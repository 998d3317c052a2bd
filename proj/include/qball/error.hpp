#pragma once

#include <stdexcept>
#include <string>

namespace qball {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DivisionByZero : public Error {
 public:
  DivisionByZero() : Error("division by zero scalar") {}
};

/// A scalar with odd powers of s cannot be evaluated exactly at rational q.
class IrrationalAtRationalQ : public Error {
 public:
  using Error::Error;
};

class PoleError : public Error {
 public:
  using Error::Error;
};

class IndexError : public Error {
 public:
  using Error::Error;
};

class ShapeMismatch : public Error {
 public:
  ShapeMismatch() : Error("elements belong to different shapes") {}
};

/// Raised when an operation requires an element of the finite-functions ideal.
class NotFinite : public Error {
 public:
  using Error::Error;
};

class UnvalidatedConvention : public Error {
 public:
  using Error::Error;
};

}  // namespace qball
