#pragma once

#include <stdexcept>
#include <string>

namespace dowling {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed or mathematically invalid input (bad table, non-faithful rep, ...).
class InputError : public Error {
public:
  using Error::Error;
};

/// A configured size cap was hit (group order, lattice size, nested-set count).
class BoundExceeded : public Error {
public:
  using Error::Error;
};

class OrderBoundExceeded : public BoundExceeded {
public:
  using BoundExceeded::BoundExceeded;
};

class SizeBoundExceeded : public BoundExceeded {
public:
  using BoundExceeded::BoundExceeded;
};

class AmbientMismatch : public Error {
public:
  using Error::Error;
};

class AbelianOnly : public InputError {
public:
  AbelianOnly() : InputError("operation requires an abelian group") {}
};

class NonInvertibleConstantTerm : public Error {
public:
  using Error::Error;
};

class TruncationUnderflow : public Error {
public:
  using Error::Error;
};

class MalformedForest : public Error {
public:
  using Error::Error;
};

/// A nested set for which no labelled forest exists. Signals an internal inconsistency.
class NotRealizable : public Error {
public:
  using Error::Error;
};

/// Two independent computation paths disagreed.
class CrossCheckFailure : public Error {
public:
  using Error::Error;
};

}  // namespace dowling
