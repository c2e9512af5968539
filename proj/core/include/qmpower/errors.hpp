#pragma once

#include <stdexcept>
#include <string>

namespace qmpower {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad arguments or a violated precondition (invalid state, spec, network).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Population escaped the truncated Fock basis.
class LeakageError : public Error {
 public:
  using Error::Error;
};

// Requested moment order cannot be represented in the truncated basis.
class OrderError : public Error {
 public:
  using Error::Error;
};

// A numerical result broke an invariant it must satisfy (e.g. a bound).
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

// An optimizer could not certify that a network reaches its bound.
class CertificationFailure : public Error {
 public:
  CertificationFailure(const std::string& what, double best, double bound)
      : Error(what), best_(best), bound_(bound) {}

  double best() const noexcept { return best_; }
  double bound() const noexcept { return bound_; }

 private:
  double best_;
  double bound_;
};

}  // namespace qmpower
