#pragma once

#include <stdexcept>
#include <string>

namespace qtau {

/// Base class for all library errors.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Malformed arguments: wrong shapes, out-of-range parameters, invalid permutations.
class InvalidInputError : public Error {
  public:
    using Error::Error;
};

/// A matrix or vector that fails density-matrix / pure-state validation.
class NotAStateError : public Error {
  public:
    using Error::Error;
};

/// Hermitian input with an eigenvalue below the PSD tolerance.
class NotPsdError : public Error {
  public:
    using Error::Error;
};

/// A requested object would exceed the dense side-length cap.
class SizeLimitError : public Error {
  public:
    using Error::Error;
};

/// An iterative routine failed to converge within its cap.
class NumericalFailureError : public Error {
  public:
    using Error::Error;
};

/// State-file syntax error; the message carries the offending line number.
class ParseError : public Error {
  public:
    using Error::Error;
};

} // namespace qtau
