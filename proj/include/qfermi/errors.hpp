#pragma once

#include <stdexcept>
#include <string>

namespace qfermi {

/// A precondition on the arguments was violated.
class InvalidArgument : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// q lies outside the interval where a model's formula is defined.
class InvalidDeformation : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

/// Evaluation at a singular or discontinuous abscissa.
class SingularPoint : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

/// A series cannot be summed to the requested tolerance, or a root bracket failed.
class ConvergenceError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// The occupation-ratio equation has no root on the requested branch.
class NoSolution : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// [n]! <= 0: the state (c^+)^n|0> cannot be normalized.
class NonNormalizable : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

}  // namespace qfermi
