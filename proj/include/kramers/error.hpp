#pragma once

#include <stdexcept>
#include <string>

namespace kramers {

/// Raised when an argument lies outside an operation's domain
/// (M < 3, chi outside (0,1], Kn <= 0, ...).
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when a numerical procedure cannot deliver a trustworthy result:
/// eigensolver non-convergence, a numerically singular boundary system,
/// an effective-viscosity pole.
class NumericalFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace kramers
