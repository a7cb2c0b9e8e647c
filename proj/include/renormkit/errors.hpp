#pragma once

#include <stdexcept>
#include <string>

namespace renormkit {

/// Input outside an operation's mathematical domain.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A floating value lies too close to a branch boundary to pick a branch.
class AmbiguousBranchError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// An enumeration or resolution request exceeds its configured budget.
class BudgetError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Working precision cannot resolve the requested quantity.
class PrecisionError : public DomainError {
 public:
  using DomainError::DomainError;
};

}  // namespace renormkit
