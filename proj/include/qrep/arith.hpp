#pragma once

// Integer arithmetic functions: filtered divisor sums, the characters and
// indicator functions used by the representation formulas, and class numbers
// of negative discriminants.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "qrep/error.hpp"
#include "qrep/rational.hpp"

namespace qrep::arith {

inline std::int64_t mod(std::int64_t a, std::int64_t m)
{
    const std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

/// floor(sqrt(n)) for n >= 0, exact.
inline std::int64_t isqrt(std::int64_t n)
{
    if (n < 0)
        throw precondition_error("isqrt of a negative number");
    auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n)
        --r;
    while ((r + 1) * (r + 1) <= n)
        ++r;
    return r;
}

inline bool is_square(std::int64_t n) { return n >= 0 && isqrt(n) * isqrt(n) == n; }

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b)
{
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r))
        throw std::overflow_error("64-bit overflow in arithmetic function");
    return r;
}

inline std::int64_t checked_add(std::int64_t a, std::int64_t b)
{
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r))
        throw std::overflow_error("64-bit overflow in arithmetic function");
    return r;
}

inline std::int64_t ipow(std::int64_t base, int exp)
{
    std::int64_t r = 1;
    for (int i = 0; i < exp; ++i)
        r = checked_mul(r, base);
    return r;
}

/// Positive divisors of n in ascending order.
inline std::vector<std::int64_t> divisors(std::int64_t n)
{
    require(n >= 1, "divisors: n must be positive, got " + std::to_string(n));
    std::vector<std::int64_t> small, large;
    for (std::int64_t d = 1; d * d <= n; ++d) {
        if (n % d != 0)
            continue;
        small.push_back(d);
        if (d != n / d)
            large.push_back(n / d);
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

struct DivisorFilter {
    enum class Kind { all, odd, residue, odd_signed };
    Kind kind = Kind::all;
    std::int64_t a = 0;
    std::int64_t m = 1;

    static DivisorFilter all() { return {Kind::all, 0, 1}; }
    static DivisorFilter odd() { return {Kind::odd, 0, 1}; }
    /// Odd divisors weighted by (-1)^((d-1)/2).
    static DivisorFilter odd_signed() { return {Kind::odd_signed, 0, 1}; }
    static DivisorFilter residue(std::int64_t a, std::int64_t m)
    {
        require(m >= 1 && 0 <= a && a < m, "residue filter needs 0 <= a < m");
        return {Kind::residue, a, m};
    }

    /// Weight of divisor d: 0 when filtered out, otherwise +1 or -1.
    int weight(std::int64_t d) const
    {
        switch (kind) {
        case Kind::all:
            return 1;
        case Kind::odd:
            return d % 2 != 0 ? 1 : 0;
        case Kind::residue:
            return mod(d, m) == a ? 1 : 0;
        case Kind::odd_signed:
            if (d % 2 == 0)
                return 0;
            return mod(d, 4) == 1 ? 1 : -1;
        }
        return 0;
    }
};

/// Sum over divisors d of n passing the filter of (sign) d^nu.
inline std::int64_t divisor_sum(std::int64_t n, int nu, const DivisorFilter & filter)
{
    require(n >= 1, "divisor_sum: n must be positive, got " + std::to_string(n));
    require(nu >= 0, "divisor_sum: nu must be nonnegative");
    std::int64_t total = 0;
    for (std::int64_t d : divisors(n)) {
        const int w = filter.weight(d);
        if (w != 0)
            total = checked_add(total, w * ipow(d, nu));
    }
    return total;
}

inline std::int64_t sigma(std::int64_t n, int nu = 1) { return divisor_sum(n, nu, DivisorFilter::all()); }

inline int chi0(std::int64_t n)
{
    require(n >= 1, "chi0: n must be positive");
    switch (n % 4) {
    case 1:
    case 3:
        return -2;
    case 2:
        return 3;
    default:
        return 1;
    }
}

/// 1 iff n is congruent to 0, k+h or k-h modulo 2k.
inline int chi_kh(std::int64_t k, std::int64_t h, std::int64_t n)
{
    require(k >= 1, "chi_kh: k must be positive");
    require(n >= 1, "chi_kh: n must be positive");
    const std::int64_t m = 2 * k;
    const std::int64_t r = mod(n, m);
    return (r == 0 || r == mod(k + h, m) || r == mod(k - h, m)) ? 1 : 0;
}

/// (1/n) sum_{d | n} chi_kh(d) d.
inline Rational f_kh(std::int64_t k, std::int64_t h, std::int64_t n)
{
    require(k > std::abs(h), "f_kh: requires k > |h|");
    require(n >= 1, "f_kh: n must be positive");
    std::int64_t s = 0;
    for (std::int64_t d : divisors(n))
        if (chi_kh(k, h, d))
            s = checked_add(s, d);
    return make_rational(s, n);
}

/// (1/n) sum over divisors d of n coprime to a, of d.
inline Rational sigma_star(std::int64_t a, std::int64_t n)
{
    require(a >= 1 && n >= 1, "sigma_star: a and n must be positive");
    std::int64_t s = 0;
    for (std::int64_t d : divisors(n))
        if (std::gcd(d, a) == 1)
            s = checked_add(s, d);
    return make_rational(s, n);
}

inline int indicator_I(std::int64_t a, std::int64_t n)
{
    require(a >= 1 && n >= 1, "indicator_I: a and n must be positive");
    return n % a == 0 ? 1 : 0;
}

/// Membership test for the sets used by the power-sum counts: perfect
/// squares, nu-th powers, or values A(m) of a polynomial; m ranges over
/// nonnegative integers in each case.
struct IndicatorKind {
    enum class Kind { square, power, polyvalue };
    Kind kind = Kind::square;
    int nu = 2;
    std::vector<std::int64_t> poly; // coefficients a_0, a_1, ...

    static IndicatorKind square() { return {Kind::square, 2, {}}; }
    static IndicatorKind power(int nu)
    {
        require(nu >= 2, "power indicator needs nu >= 2");
        return {Kind::power, nu, {}};
    }
    static IndicatorKind polyvalue(std::vector<std::int64_t> coeffs)
    {
        bool nonconstant = false;
        for (std::size_t i = 0; i < coeffs.size(); ++i) {
            require(coeffs[i] >= 0, "polynomial coefficients must be nonnegative integers");
            if (i > 0 && coeffs[i] > 0)
                nonconstant = true;
        }
        require(nonconstant, "polynomial must have a positive nonconstant coefficient");
        return {Kind::polyvalue, 0, std::move(coeffs)};
    }

    BigInt value_at(std::int64_t m) const
    {
        switch (kind) {
        case Kind::square:
            return make_bigint(m) * m;
        case Kind::power: {
            BigInt r;
            mpz_pow_ui(r.get_mpz_t(), make_bigint(m).get_mpz_t(), static_cast<unsigned long>(nu));
            return r;
        }
        case Kind::polyvalue: {
            BigInt r = 0;
            for (auto it = poly.rbegin(); it != poly.rend(); ++it)
                r = r * m + make_bigint(*it);
            return r;
        }
        }
        return 0;
    }
};

inline int indicator(const IndicatorKind & kind, const BigInt & t)
{
    if (sgn(t) < 0)
        return 0;
    switch (kind.kind) {
    case IndicatorKind::Kind::square:
        return mpz_perfect_square_p(t.get_mpz_t()) ? 1 : 0;
    case IndicatorKind::Kind::power: {
        BigInt root;
        return mpz_root(root.get_mpz_t(), t.get_mpz_t(), static_cast<unsigned long>(kind.nu)) != 0 ? 1 : 0;
    }
    case IndicatorKind::Kind::polyvalue:
        // A is nondecreasing on m >= 0 and strictly increasing once it moves.
        for (std::int64_t m = 0;; ++m) {
            const BigInt v = kind.value_at(m);
            if (v == t)
                return 1;
            if (v > t)
                return 0;
        }
    }
    return 0;
}

/// Non-integers and negative values are not in any of the sets.
inline int indicator(const IndicatorKind & kind, const Rational & t)
{
    if (!is_integer(t))
        return 0;
    return indicator(kind, BigInt(t.get_num()));
}

inline int indicator(const IndicatorKind & kind, std::int64_t t) { return indicator(kind, make_bigint(t)); }

/// Indicator values for 0..n_max, built by enumerating the set directly.
inline std::vector<char> indicator_table(const IndicatorKind & kind, std::int64_t n_max)
{
    require(n_max >= 0, "indicator_table: n_max must be nonnegative");
    std::vector<char> table(static_cast<std::size_t>(n_max + 1), 0);
    for (std::int64_t m = 0;; ++m) {
        const BigInt v = kind.value_at(m);
        if (v > n_max)
            break;
        table[static_cast<std::size_t>(v.get_si())] = 1;
    }
    return table;
}

/// Primitive positive definite binary quadratic form ax^2 + bxy + cy^2 in
/// reduced position: |b| <= a <= c, and b >= 0 whenever |b| = a or a = c.
struct ReducedForm {
    std::int64_t a, b, c;

    std::int64_t discriminant() const { return b * b - 4 * a * c; }
    friend bool operator==(const ReducedForm &, const ReducedForm &) = default;
};

inline void require_negative_discriminant(std::int64_t D)
{
    require(D < 0, "discriminant must be negative, got " + std::to_string(D));
    require(mod(D, 4) == 0 || mod(D, 4) == 1,
            "discriminant must be 0 or 1 mod 4, got " + std::to_string(D));
}

inline std::vector<ReducedForm> reduced_forms(std::int64_t D)
{
    require_negative_discriminant(D);
    std::vector<ReducedForm> forms;
    for (std::int64_t a = 1; 3 * a * a <= -D; ++a) {
        for (std::int64_t b = -a + 1; b <= a; ++b) {
            const std::int64_t num = b * b - D;
            if (num % (4 * a) != 0)
                continue;
            const std::int64_t c = num / (4 * a);
            if (c < a || (a == c && b < 0))
                continue;
            if (std::gcd(std::gcd(a, std::abs(b)), c) != 1)
                continue;
            forms.push_back({a, b, c});
        }
    }
    return forms;
}

/// h(D): number of primitive reduced forms of discriminant D.
inline std::int64_t class_number(std::int64_t D)
{
    return static_cast<std::int64_t>(reduced_forms(D).size());
}

} // namespace qrep::arith
