#pragma once

#include <stdexcept>
#include <string>

namespace beamkit {

/// An argument lies outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A dispersion model could not produce a finite positive index.
class ModelDomainError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// The input sits exactly on a support boundary where the closed form is infinite.
class SingularBoundaryError : public DomainError {
 public:
  using DomainError::DomainError;
};

}  // namespace beamkit
