#pragma once

#include <stdexcept>
#include <string>

namespace wittenlab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand shapes disagree (variable counts, vector lengths, matrix sizes).
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A documented precondition of an operation does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Input lies outside the domain on which a closed formula is stated.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A coefficient was requested that the available relations do not determine.
class UndeterminedError : public Error {
 public:
  using Error::Error;
};

/// The requested computation is not supported for this kind of input.
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

/// Malformed external input (files, flags).
class InputError : public Error {
 public:
  using Error::Error;
};

}  // namespace wittenlab
