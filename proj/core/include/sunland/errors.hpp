#pragma once

#include <stdexcept>
#include <string>

namespace sunland {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

/// An input violated an operation's precondition (non-Hermitian, not tangent, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A matrix failed the admission test of a domain type; the message carries the residual.
class InvariantError : public Error {
 public:
  using Error::Error;
};

/// The Gram matrix of constraint gradients is singular or too ill-conditioned.
class IrregularPointError : public Error {
 public:
  using Error::Error;
};

/// det(U) is too close to -1, the point excluded by the stereographic chart.
class WestPoleError : public Error {
 public:
  using Error::Error;
};

class NotCriticalError : public Error {
 public:
  using Error::Error;
};

class AmbiguousMatchError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace sunland
