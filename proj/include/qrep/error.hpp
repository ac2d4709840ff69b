#pragma once

#include <stdexcept>
#include <string>

namespace qrep {

/// Raised when an operation's documented precondition does not hold
/// (gcd conditions, parity conditions, out-of-range parameters).
struct precondition_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A closed form was asked for outside the domain on which it is validated.
/// Callers may fall back to the series route.
struct domain_error : precondition_error {
    using precondition_error::precondition_error;
};

/// Two independent computations that must agree did not.
struct cross_check_failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline void require(bool cond, const std::string & what)
{
    if (!cond)
        throw precondition_error(what);
}

} // namespace qrep
