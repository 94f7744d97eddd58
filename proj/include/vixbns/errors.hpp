#pragma once

#include <stdexcept>
#include <string>

namespace vixbns {

/// Argument outside the mathematical domain of an operation (bad alpha, K, zeta, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The Fourier pricing integral is not defined for the requested model/eps combination.
class IntegrabilityError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A model condition required by the hedging representation does not hold.
class ConditionError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Numerical failure: tolerance not met, grid too coarse, inversion inaccurate.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace vixbns
