#pragma once

#include <stdexcept>
#include <string>

namespace fockdecay {

/// Argument outside the mathematical domain of an operation (negative
/// argument, non-finite input, k > n, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Argument inside the domain but outside the validated range
/// (n > 50, tau > 50).
class RangeError : public std::range_error {
 public:
  using std::range_error::range_error;
};

/// The closed-form path does not cover these parameters (nbar > 0).
class UnsupportedParameter : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Iterative refinement or adaptive quadrature failed to converge.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A truncated representation lost too much mass (ODE top level, Hankel
/// integration cutoff).
class TruncationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Integer arithmetic would overflow the chosen width.
class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

}  // namespace fockdecay
