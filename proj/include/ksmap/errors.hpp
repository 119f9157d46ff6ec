#pragma once

#include <stdexcept>
#include <string>

namespace ksmap {

/// Malformed input: bad pencil file, parse failure, unsupported model.
/// The CLI maps it to exit code 2.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A numeric stage could not reach a verdict at the requested tolerances
/// (exit code 3).
class NumericInconclusive : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An internal invariant failed to hold (exit code 4).
class InvariantViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Precondition failures of the algebra layer (division by zero, non-exact
/// division, gcd of two zeros, ...).
class AlgebraError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

}  // namespace ksmap
