#pragma once

#include <stdexcept>
#include <string>

namespace affrig {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or non-finite input (bad indices, NaN coordinates, asymmetric G, ...).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// Instance outside the supported domain, e.g. fewer than d+1 vertices.
class UnsupportedInstance : public Error {
 public:
  using Error::Error;
};

/// The configuration does not affinely span R^d.
class ImproperFramework : public Error {
 public:
  ImproperFramework(int span_dim, int dim)
      : Error("improper framework: affine span has dimension " + std::to_string(span_dim) +
              ", expected " + std::to_string(dim)),
        span_dimension(span_dim) {}
  int span_dimension;
};

/// A linear system that must be nonsingular turned out singular.
class DegenerateInstance : public Error {
 public:
  using Error::Error;
};

class NotAffinelyRigid : public Error {
 public:
  NotAffinelyRigid(int corank_, int expected)
      : Error("not affinely rigid: corank " + std::to_string(corank_) + " > " +
              std::to_string(expected)),
        corank(corank_) {}
  int corank;
};

/// Scan charts disagree beyond the kernel tolerance (numerical corank below d+1).
class InconsistentScans : public Error {
 public:
  InconsistentScans(int corank_, int expected)
      : Error("inconsistent scans: corank " + std::to_string(corank_) + " < " +
              std::to_string(expected) + " (noise exceeds tolerance)"),
        corank(corank_) {}
  int corank;
};

/// Length directions lie on a conic at infinity, so the Gram matrix is not unique.
class NonUniqueGram : public Error {
 public:
  using Error::Error;
};

/// Least-squares Gram matrix is indefinite beyond the clipping tolerance.
class InconsistentLengths : public Error {
 public:
  using Error::Error;
};

}  // namespace affrig
