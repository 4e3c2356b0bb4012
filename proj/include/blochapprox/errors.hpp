#pragma once

#include <stdexcept>
#include <string>

namespace blochapprox {

// An argument violated a stated contract (non-Hermitian input, wrong arity...).
class ContractViolationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// State parameters outside the canonical region a in [0,1/2], phi in [0,pi/2];
// the closed-form solvers refuse and the caller should use the oracle instead.
class CanonicalizationError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Angle outside the range the closed-form solvers support.
class UnsupportedAngleError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Rotation by 0 or pi is (-)identity and has no distinguished eigenbasis.
class DegenerateGateError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Two-gate sets require beta > alpha.
class GateOrderingError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Empty or oversized basis handed to the oracle.
class BasisSizeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace blochapprox
