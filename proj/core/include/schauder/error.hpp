#pragma once

#include <stdexcept>
#include <string>

namespace schauder {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// The grid has too few points for the requested finite-difference stencil.
class GridTooCoarse : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class BasisMismatch : public Error {
 public:
  using Error::Error;
};

/// A quadrature rule cannot resolve the basis (Gram matrix too far from I).
class QuadratureError : public Error {
 public:
  using Error::Error;
};

/// Elliptic data with nonzero mean: the problem has no solution.
class CompatibilityError : public Error {
 public:
  using Error::Error;
};

class BoundaryConditionError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace schauder
