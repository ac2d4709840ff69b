#pragma once

#include <cstdint>
#include <string>

#include <gmpxx.h>

#include "qrep/error.hpp"

namespace qrep {

using Rational = mpq_class;
using BigInt = mpz_class;

inline bool is_zero(const Rational & r) { return sgn(r) == 0; }

inline bool is_integer(const Rational & r) { return r.get_den() == 1; }

inline Rational make_rational(std::int64_t num, std::int64_t den = 1)
{
    Rational r(BigInt(static_cast<long>(num)), BigInt(static_cast<long>(den)));
    r.canonicalize();
    return r;
}

inline BigInt make_bigint(std::int64_t v) { return BigInt(static_cast<long>(v)); }

/// Exact conversion to int64; throws if the value is not an integer or does
/// not fit.
inline std::int64_t to_int64(const Rational & r)
{
    if (!is_integer(r))
        throw std::domain_error("rational value " + r.get_str() + " is not an integer");
    const BigInt & z = r.get_num();
    if (!z.fits_slong_p())
        throw std::overflow_error("integer " + z.get_str() + " does not fit in 64 bits");
    return z.get_si();
}

inline std::int64_t to_int64(const BigInt & z)
{
    if (!z.fits_slong_p())
        throw std::overflow_error("integer " + z.get_str() + " does not fit in 64 bits");
    return z.get_si();
}

} // namespace qrep
