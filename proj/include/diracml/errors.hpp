#pragma once

#include <stdexcept>
#include <string>

namespace diracml {

// Bad dimension, parity or size argument.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Argument outside the supported domain of a routine.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Root bracketing, factorization or iteration failure.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Geometry that a routine cannot handle (self-intersection, bad orientation).
class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace diracml
