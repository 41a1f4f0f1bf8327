#pragma once

#include <stdexcept>
#include <string>

namespace stq {

// Base class for every failure raised by the library. Subclasses name the
// precise mathematical condition so callers (and tests) can dispatch on it.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// A term with zero exponent rate was handed to the t-integral from -inf.
class SingularIntegral : public Error {
 public:
  using Error::Error;
};

// An e^{(k+lb)T} factor survived endpoint substitution.
class ResidualTimeDependence : public Error {
 public:
  using Error::Error;
};

// Driving frequency coincides with a homogeneous mode of the trajectory ODE.
class ResonantDenominator : public Error {
 public:
  using Error::Error;
};

// Operator C applied to a constant term.
class SingularC : public Error {
 public:
  using Error::Error;
};

class OddParity : public Error {
 public:
  using Error::Error;
};

class IndexError : public Error {
 public:
  using Error::Error;
};

class TruncationOverflow : public Error {
 public:
  using Error::Error;
};

class ConvergenceFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace stq
