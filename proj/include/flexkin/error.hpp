#ifndef FLEXKIN_ERROR_HPP
#define FLEXKIN_ERROR_HPP

#include <stdexcept>
#include <string>

namespace flexkin {

/// Caller violated a documented precondition (bad arity, out-of-range index, ...).
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Blaschke-Gruenwald pose on the excluded line q0 = q1 = 0.
class InvalidPose : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Configuration violating the combinatorial structure (zero-length leg, collapsed plate).
class InvalidConfig : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A theorem-level check failed; carries a human readable counterexample.
class VerificationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace flexkin

#endif  // FLEXKIN_ERROR_HPP
