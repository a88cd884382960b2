#pragma once

#include <stdexcept>
#include <string>

namespace phasecone {

// Base class for every error raised by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A dimension or point count lies outside its documented range.
class InvalidDimension : public Error {
 public:
  using Error::Error;
};

// Two operators or fields that must share a dimension do not.
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

// Two fields that must share a grid do not.
class GridMismatch : public Error {
 public:
  using Error::Error;
};

// The grid spacing is too large for the requested transform.
class GridTooCoarse : public Error {
 public:
  using Error::Error;
};

// A computation left the region where the finite matrix truncation is
// trustworthy by more than the documented budget.
class TruncationError : public Error {
 public:
  using Error::Error;
};

// A matrix failed certification as a density operator.
class CertificationError : public Error {
 public:
  using Error::Error;
};

// An operator expected to be Hermitian is not, beyond tolerance.
class NotHermitian : public Error {
 public:
  using Error::Error;
};

// A point (or a difference of points) falls outside the tabulated grid.
class OutOfGrid : public Error {
 public:
  using Error::Error;
};

// A covariance matrix is not symmetric positive semidefinite.
class BadCovariance : public Error {
 public:
  using Error::Error;
};

// A semigroup was asked to run backwards.
class NegativeTime : public Error {
 public:
  using Error::Error;
};

// A file or stream could not be parsed.
class ParseError : public Error {
 public:
  using Error::Error;
};

// A file could not be read or written.
class IOError : public Error {
 public:
  using Error::Error;
};

}  // namespace phasecone
