#pragma once

#include <stdexcept>
#include <string>

namespace presliding {

/// Argument outside the admissible range of a model formula.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Operation queried in a state it is not defined for (wrong branch side,
/// wrong shape exponent, malformed config).
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Iterative procedure failed to converge within its budget.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Integrator step left the admissible force band; the step size is too
/// large for the stiffness ratio.
class StepRejected : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace presliding
