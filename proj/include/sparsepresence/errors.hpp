#pragma once

#include <stdexcept>
#include <string>

namespace spres {

// Root of the library's error taxonomy. Every failure surfaced across the
// public interface derives from this type so callers can map it to a status.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Invalid argument: bad dimensions, out-of-range indices, malformed options.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

// The linear system has fewer stacked equations than unknowns.
class UnderdeterminedError : public Error {
 public:
  using Error::Error;
};

// A matrix that must be inverted is singular or numerically near-singular.
class SingularityError : public Error {
 public:
  using Error::Error;
};

// Input is degenerate for the requested operation (all-zero signal,
// linearly dependent atom selection, all-zero score vector).
class DegeneracyError : public Error {
 public:
  using Error::Error;
};

// A numerical routine failed to produce a usable result.
class NumericalError : public Error {
 public:
  using Error::Error;
};

// File persistence failed: missing file, bad magic, short read, write error.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace spres
