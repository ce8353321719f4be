#pragma once

#include <stdexcept>
#include <string>

namespace geoswarm {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A point (or an operation result) left the admissible domain of the manifold.
struct DomainViolation : Error {
  using Error::Error;
};

// Logarithm requested between nearly antipodal sphere points. Cannot occur for
// domain-respecting inputs; guards against integrator overshoot.
struct NearAntipodal : Error {
  using Error::Error;
};

struct NonFiniteValue : Error {
  using Error::Error;
};

// An audit was asked to assume a lower bound C that the potential does not satisfy.
struct HypothesisUnmet : Error {
  using Error::Error;
};

struct TooLarge : Error {
  using Error::Error;
};

struct TimeGridMismatch : Error {
  using Error::Error;
};

struct Degenerate : Error {
  using Error::Error;
};

// Invalid or inconsistent run configuration; message names the offending field.
struct ConfigError : Error {
  using Error::Error;
};

}  // namespace geoswarm
