#pragma once

// Truncated Laurent series in q whose exponents live on the lattice (1/2)Z,
// with exact rational coefficients.
//
// Exponents are stored in half-units: index e stands for q^(e/2). A series
// knows its coefficients exactly for every exponent strictly below order();
// everything at or above order() is unknown. All operations propagate the
// tightest order that is guaranteed by their inputs.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qrep/error.hpp"
#include "qrep/rational.hpp"

namespace qrep::qseries {

inline int floor_div(int a, int b)
{
    int q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0)))
        --q;
    return q;
}

inline int ceil_div(int a, int b) { return -floor_div(-a, b); }

class HalfLaurentSeries {
public:
    /// Coefficient i of `coeffs` belongs to exponent base + i (half-units);
    /// the series is valid below base + coeffs.size().
    HalfLaurentSeries(int base, std::vector<Rational> coeffs)
        : base_(base), coeffs_(std::move(coeffs))
    {
        require(!coeffs_.empty(), "series must satisfy order > base");
    }

    static HalfLaurentSeries zero(int order)
    {
        const int base = std::min(0, order - 1);
        return HalfLaurentSeries(base, std::vector<Rational>(order - base));
    }

    static HalfLaurentSeries one(int order)
    {
        require(order > 0, "constant series needs order > 0");
        auto s = zero(order);
        s.coeffs_[-s.base_] = 1;
        return s;
    }

    /// Builds the series with exactly the given (exponent, coefficient) terms.
    static HalfLaurentSeries from_terms(std::span<const std::pair<int, Rational>> terms, int order)
    {
        int base = std::min(0, order - 1);
        for (const auto & [e, c] : terms) {
            if (e >= order)
                throw precondition_error("exponent " + std::to_string(e) +
                                         " is not below the truncation order " +
                                         std::to_string(order));
            base = std::min(base, e);
        }
        std::vector<Rational> coeffs(order - base);
        std::vector<bool> seen(coeffs.size(), false);
        for (const auto & [e, c] : terms) {
            const auto i = static_cast<std::size_t>(e - base);
            if (seen[i])
                throw precondition_error("duplicate exponent " + std::to_string(e));
            seen[i] = true;
            coeffs[i] = c;
        }
        return HalfLaurentSeries(base, std::move(coeffs));
    }

    static HalfLaurentSeries from_terms(std::initializer_list<std::pair<int, Rational>> terms,
                                        int order)
    {
        std::vector<std::pair<int, Rational>> v(terms);
        return from_terms(std::span<const std::pair<int, Rational>>(v), order);
    }

    int base() const { return base_; }
    int order() const { return base_ + static_cast<int>(coeffs_.size()); }
    std::span<const Rational> coeffs() const { return coeffs_; }

    /// Exact coefficient of q^(exponent/2).
    const Rational & coeff(int exponent) const
    {
        if (exponent >= order())
            throw precondition_error("coefficient at exponent " + std::to_string(exponent) +
                                     " lies beyond the truncation order " +
                                     std::to_string(order()));
        if (exponent < base_)
            return zero_value();
        return coeffs_[static_cast<std::size_t>(exponent - base_)];
    }

    /// Lowest exponent with a nonzero coefficient.
    std::optional<int> valuation() const
    {
        for (std::size_t i = 0; i < coeffs_.size(); ++i)
            if (!qrep::is_zero(coeffs_[i]))
                return base_ + static_cast<int>(i);
        return std::nullopt;
    }

    bool is_zero() const { return !valuation().has_value(); }

    /// Same series with validity lowered to `order` (never raised).
    HalfLaurentSeries truncated(int order) const
    {
        order = std::min(order, this->order());
        if (order <= base_)
            return zero(order);
        return HalfLaurentSeries(base_, std::vector<Rational>(coeffs_.begin(),
                                                              coeffs_.begin() + (order - base_)));
    }

    /// Coefficientwise equality on the common validity range.
    friend bool operator==(const HalfLaurentSeries & f, const HalfLaurentSeries & g)
    {
        const int lo = std::min(f.base_, g.base_);
        const int hi = std::min(f.order(), g.order());
        for (int e = lo; e < hi; ++e)
            if (f.coeff(e) != g.coeff(e))
                return false;
        return true;
    }

private:
    static const Rational & zero_value()
    {
        static const Rational z(0);
        return z;
    }

    int base_;
    std::vector<Rational> coeffs_;
};

namespace detail {

// Lowest exponent that might be nonzero: the valuation, or the order when the
// known part is zero.
inline int effective_valuation(const HalfLaurentSeries & f)
{
    return f.valuation().value_or(f.order());
}

// Coefficients 0..order-1 of a series with no terms at negative exponents.
inline std::vector<Rational> power_series_part(const HalfLaurentSeries & f, const char * op)
{
    require(f.order() > 0, std::string(op) + ": series must be valid at exponent 0");
    for (int e = f.base(); e < 0; ++e)
        if (!is_zero(f.coeff(e)))
            throw precondition_error(std::string(op) + ": series has terms at negative exponents");
    std::vector<Rational> out(static_cast<std::size_t>(f.order()));
    for (int e = std::max(0, f.base()); e < f.order(); ++e)
        out[static_cast<std::size_t>(e)] = f.coeff(e);
    return out;
}

} // namespace detail

inline HalfLaurentSeries add(const HalfLaurentSeries & f, const HalfLaurentSeries & g)
{
    const int base = std::min(f.base(), g.base());
    const int order = std::min(f.order(), g.order());
    if (order <= base)
        return HalfLaurentSeries::zero(order);
    std::vector<Rational> c(order - base);
    for (int e = base; e < order; ++e) {
        auto & slot = c[static_cast<std::size_t>(e - base)];
        if (e >= f.base())
            slot += f.coeff(e);
        if (e >= g.base())
            slot += g.coeff(e);
    }
    return HalfLaurentSeries(base, std::move(c));
}

inline HalfLaurentSeries scale(const HalfLaurentSeries & f, const Rational & factor)
{
    std::vector<Rational> c(f.coeffs().begin(), f.coeffs().end());
    for (auto & x : c)
        x *= factor;
    return HalfLaurentSeries(f.base(), std::move(c));
}

inline HalfLaurentSeries negate(const HalfLaurentSeries & f) { return scale(f, Rational(-1)); }

inline HalfLaurentSeries subtract(const HalfLaurentSeries & f, const HalfLaurentSeries & g)
{
    return add(f, negate(g));
}

/// Multiplies by q^(half_units/2).
inline HalfLaurentSeries shift(const HalfLaurentSeries & f, int half_units)
{
    return HalfLaurentSeries(f.base() + half_units,
                             std::vector<Rational>(f.coeffs().begin(), f.coeffs().end()));
}

/// Exact product. If f = F + O(q^a) and g = G + O(q^b) the product is known
/// below min(a + val(G), b + val(F)).
inline HalfLaurentSeries mul(const HalfLaurentSeries & f, const HalfLaurentSeries & g)
{
    const int base = f.base() + g.base();
    const int order = std::min(f.order() + detail::effective_valuation(g),
                               g.order() + detail::effective_valuation(f));
    std::vector<Rational> c(static_cast<std::size_t>(order - base));
    const auto fc = f.coeffs();
    const auto gc = g.coeffs();
    const std::size_t n = c.size();
    Rational t;
    for (std::size_t i = 0; i < fc.size() && i < n; ++i) {
        if (is_zero(fc[i]))
            continue;
        for (std::size_t j = 0; j < gc.size() && i + j < n; ++j) {
            if (is_zero(gc[j]))
                continue;
            mpq_mul(t.get_mpq_t(), fc[i].get_mpq_t(), gc[j].get_mpq_t());
            c[i + j] += t;
        }
    }
    return HalfLaurentSeries(base, std::move(c));
}

/// Leibniz square: coefficient n is the sum over k + l = n of f_k f_l.
inline HalfLaurentSeries square(const HalfLaurentSeries & f)
{
    const int base = 2 * f.base();
    const int order = f.order() + detail::effective_valuation(f);
    std::vector<Rational> c(static_cast<std::size_t>(order - base));
    const auto fc = f.coeffs();
    const std::size_t n = c.size();
    Rational t;
    for (std::size_t i = 0; i < fc.size() && 2 * i < n; ++i) {
        if (is_zero(fc[i]))
            continue;
        mpq_mul(t.get_mpq_t(), fc[i].get_mpq_t(), fc[i].get_mpq_t());
        c[2 * i] += t;
        for (std::size_t j = i + 1; j < fc.size() && i + j < n; ++j) {
            if (is_zero(fc[j]))
                continue;
            mpq_mul(t.get_mpq_t(), fc[i].get_mpq_t(), fc[j].get_mpq_t());
            c[i + j] += t;
            c[i + j] += t;
        }
    }
    return HalfLaurentSeries(base, std::move(c));
}

inline HalfLaurentSeries pow(const HalfLaurentSeries & f, unsigned n)
{
    if (n == 0)
        return HalfLaurentSeries::one(std::max(1, f.order()));
    std::optional<HalfLaurentSeries> result;
    HalfLaurentSeries b = f;
    for (;;) {
        if (n & 1u)
            result = result ? mul(*result, b) : b;
        n >>= 1u;
        if (n == 0)
            break;
        b = square(b);
    }
    return *result;
}

/// Square root g with g^2 = f and positive leading coefficient. The leading
/// exponent of f must be even (in half-units) with coefficient 1. Uses the
/// quadratic recurrence g_n = (f_n - sum_{0<k<n} g_k g_{n-k}) / 2.
inline HalfLaurentSeries sqrt(const HalfLaurentSeries & f)
{
    const auto v = f.valuation();
    if (!v)
        throw precondition_error("sqrt: series has no nonzero coefficient (leading term must be 1)");
    if (*v % 2 != 0)
        throw precondition_error("sqrt: leading exponent " + std::to_string(*v) +
                                 " is not divisible by 2 half-units");
    if (f.coeff(*v) != 1)
        throw precondition_error("sqrt: leading coefficient is " + f.coeff(*v).get_str() +
                                 ", expected 1");
    const auto len = static_cast<std::size_t>(f.order() - *v);
    std::vector<Rational> g(len);
    g[0] = 1;
    Rational acc, t;
    for (std::size_t n = 1; n < len; ++n) {
        acc = 0;
        // symmetric half of sum_{k=1}^{n-1} g_k g_{n-k}
        for (std::size_t k = 1; 2 * k < n; ++k) {
            if (is_zero(g[k]) || is_zero(g[n - k]))
                continue;
            mpq_mul(t.get_mpq_t(), g[k].get_mpq_t(), g[n - k].get_mpq_t());
            acc += t;
        }
        acc *= 2;
        if (n % 2 == 0 && !is_zero(g[n / 2])) {
            mpq_mul(t.get_mpq_t(), g[n / 2].get_mpq_t(), g[n / 2].get_mpq_t());
            acc += t;
        }
        g[n] = f.coeff(*v + static_cast<int>(n)) - acc;
        g[n] /= 2;
    }
    return HalfLaurentSeries(*v / 2, std::move(g));
}

/// Multiplicative inverse; the leading coefficient may be any nonzero value.
inline HalfLaurentSeries reciprocal(const HalfLaurentSeries & f)
{
    const auto v = f.valuation();
    if (!v)
        throw precondition_error("reciprocal: series is zero to its truncation order");
    const Rational lead_inv = 1 / f.coeff(*v);
    const auto len = static_cast<std::size_t>(f.order() - *v);
    std::vector<Rational> g(len);
    g[0] = lead_inv;
    Rational acc, t;
    for (std::size_t n = 1; n < len; ++n) {
        acc = 0;
        for (std::size_t k = 1; k <= n; ++k) {
            const Rational & fk = f.coeff(*v + static_cast<int>(k));
            if (is_zero(fk) || is_zero(g[n - k]))
                continue;
            mpq_mul(t.get_mpq_t(), fk.get_mpq_t(), g[n - k].get_mpq_t());
            acc += t;
        }
        g[n] = -acc * lead_inv;
    }
    return HalfLaurentSeries(-*v, std::move(g));
}

/// Logarithm of a series with constant term 1 and no negative exponents.
inline HalfLaurentSeries log(const HalfLaurentSeries & f)
{
    auto c = detail::power_series_part(f, "log");
    if (c[0] != 1)
        throw precondition_error("log: constant term is " + c[0].get_str() + ", expected 1");
    const std::size_t len = c.size();
    std::vector<Rational> l(len);
    Rational acc, t;
    for (std::size_t n = 1; n < len; ++n) {
        // n f_n = sum_{k=1}^{n} k L_k f_{n-k}
        acc = 0;
        for (std::size_t k = 1; k < n; ++k) {
            if (is_zero(l[k]) || is_zero(c[n - k]))
                continue;
            mpq_mul(t.get_mpq_t(), l[k].get_mpq_t(), c[n - k].get_mpq_t());
            acc += t * static_cast<long>(k);
        }
        l[n] = c[n] - acc / static_cast<long>(n);
    }
    return HalfLaurentSeries(0, std::move(l));
}

/// exp(-a) for a series with zero constant term and no negative exponents.
/// Coefficient n of the result is the T0 transform of (a_1, ..., a_n).
inline HalfLaurentSeries exp_neg(const HalfLaurentSeries & a)
{
    auto c = detail::power_series_part(a, "exp_neg");
    if (!is_zero(c[0]))
        throw precondition_error("exp_neg: constant term is " + c[0].get_str() + ", expected 0");
    const std::size_t len = c.size();
    std::vector<std::size_t> support;
    for (std::size_t k = 1; k < len; ++k)
        if (!is_zero(c[k]))
            support.push_back(k);
    std::vector<Rational> e(len);
    e[0] = 1;
    Rational acc, t;
    for (std::size_t n = 1; n < len; ++n) {
        // n E_n = -sum_{k=1}^{n} k a_k E_{n-k}
        acc = 0;
        for (std::size_t k : support) {
            if (k > n)
                break;
            if (is_zero(e[n - k]))
                continue;
            mpq_mul(t.get_mpq_t(), c[k].get_mpq_t(), e[n - k].get_mpq_t());
            acc += t * static_cast<long>(k);
        }
        e[n] = -acc / static_cast<long>(n);
    }
    return HalfLaurentSeries(0, std::move(e));
}

/// Substitutes q -> q^factor.
inline HalfLaurentSeries dilate(const HalfLaurentSeries & f, int factor)
{
    require(factor >= 1, "dilate: factor must be positive");
    const int base = f.base() * factor;
    const int order = f.order() * factor;
    std::vector<Rational> c(static_cast<std::size_t>(order - base));
    for (std::size_t i = 0; i < f.coeffs().size(); ++i)
        c[i * static_cast<std::size_t>(factor)] = f.coeffs()[i];
    return HalfLaurentSeries(base, std::move(c));
}

/// Substitutes q -> q^(1/2). Every nonzero exponent must be a whole power of q.
inline HalfLaurentSeries contract(const HalfLaurentSeries & f)
{
    for (int e = f.base(); e < f.order(); ++e)
        if (e % 2 != 0 && !is_zero(f.coeff(e)))
            throw precondition_error("contract: series has a half-integer exponent");
    const int base = floor_div(f.base(), 2);
    const int order = ceil_div(f.order(), 2);
    std::vector<Rational> c(static_cast<std::size_t>(order - base));
    for (int e = base; e < order; ++e)
        if (2 * e >= f.base())
            c[static_cast<std::size_t>(e - base)] = f.coeff(2 * e);
    return HalfLaurentSeries(base, std::move(c));
}

/// Coefficient n (half-units) of sqrt(f) by explicit Faa di Bruno summation
/// over partitions a_1 + 2 a_2 + ... + n a_n = n. Exponential in n; meant as
/// an independent check of sqrt().
inline Rational sqrt_coeff_fdb(const HalfLaurentSeries & f, int n)
{
    require(n >= 0, "sqrt_coeff_fdb: n must be nonnegative");
    if (n >= f.order())
        throw precondition_error("sqrt_coeff_fdb: n = " + std::to_string(n) +
                                 " lies beyond the truncation order");
    auto c = detail::power_series_part(f, "sqrt_coeff_fdb");
    if (c[0] != 1)
        throw precondition_error("sqrt_coeff_fdb: constant term must be 1");
    if (n == 0)
        return Rational(1);

    // h_m(1) = (-1)^m (-1/2)_m, i.e. the m-th derivative of sqrt at 1.
    std::vector<Rational> h(static_cast<std::size_t>(n) + 1);
    h[0] = 1;
    for (int m = 1; m <= n; ++m)
        h[m] = h[m - 1] * (Rational(1, 2) - (m - 1));

    std::vector<Rational> inv_fact(static_cast<std::size_t>(n) + 1);
    inv_fact[0] = 1;
    for (int k = 1; k <= n; ++k)
        inv_fact[k] = inv_fact[k - 1] / k;

    Rational total = 0;
    // Enumerate parts from largest j down to 1; `prod` carries prod f_j^a_j / a_j!.
    auto recurse = [&](auto && self, int j, int remaining, int parts, const Rational & prod) -> void {
        if (remaining == 0) {
            total += h[parts] * prod;
            return;
        }
        if (j == 0)
            return;
        const Rational & fj = c[static_cast<std::size_t>(j)];
        self(self, j - 1, remaining, parts, prod);
        if (is_zero(fj))
            return;
        Rational power = 1;
        for (int a = 1; a * j <= remaining; ++a) {
            power *= fj;
            self(self, j - 1, remaining - a * j, parts + a, prod * power * inv_fact[a]);
        }
    };
    recurse(recurse, n, n, 0, Rational(1));
    return total;
}

struct Evaluation {
    double value;
    /// Bound on the omitted tail assuming the unknown coefficients do not
    /// exceed the largest known one in absolute value.
    double tail_bound;
};

/// Truncated numeric evaluation at real q in (0, 1).
inline Evaluation eval_real(const HalfLaurentSeries & f, double q)
{
    require(q > 0.0 && q < 1.0, "eval_real: q must lie in (0, 1)");
    const long double root = std::sqrt(static_cast<long double>(q));
    long double sum = 0.0L;
    long double biggest = 0.0L;
    for (int e = f.base(); e < f.order(); ++e) {
        const Rational & c = f.coeff(e);
        if (is_zero(c))
            continue;
        const long double cv = c.get_d();
        biggest = std::max(biggest, std::fabs(cv));
        sum += cv * std::pow(root, static_cast<long double>(e));
    }
    const long double tail = biggest * std::pow(root, static_cast<long double>(f.order())) / (1.0L - root);
    return {static_cast<double>(sum), static_cast<double>(tail)};
}

inline HalfLaurentSeries operator+(const HalfLaurentSeries & f, const HalfLaurentSeries & g) { return add(f, g); }
inline HalfLaurentSeries operator-(const HalfLaurentSeries & f, const HalfLaurentSeries & g) { return subtract(f, g); }
inline HalfLaurentSeries operator*(const HalfLaurentSeries & f, const HalfLaurentSeries & g) { return mul(f, g); }
inline HalfLaurentSeries operator*(const Rational & r, const HalfLaurentSeries & f) { return scale(f, r); }

} // namespace qrep::qseries

namespace qrep {
using qseries::HalfLaurentSeries;
}
