#pragma once

// Floating-point elliptic numerics: K by the arithmetic-geometric mean,
// theta values, singular moduli, multipliers, and numeric checks of the
// theta / elliptic-integral / hyperbolic-sum identities.

#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <numeric>
#include <string>
#include <vector>

#include "qrep/arith.hpp"
#include "qrep/error.hpp"
#include "qrep/qseries.hpp"
#include "qrep/theta.hpp"

namespace qrep::elliptic {

inline constexpr double pi = std::numbers::pi;

inline double agm(double a, double b)
{
    for (int i = 0; i < 64; ++i) {
        const double an = 0.5 * (a + b);
        const double bn = std::sqrt(a * b);
        if (an == a && bn == b)
            break;
        a = an;
        b = bn;
        if (std::fabs(a - b) <= 1e-17 * a)
            break;
    }
    return 0.5 * (a + b);
}

/// K from the complementary modulus k' = sqrt(1 - k^2); accurate for k near 1.
inline double ellipK_from_complement(double kp)
{
    require(kp > 0 && kp <= 1, "ellipK: complementary modulus must lie in (0, 1]");
    return pi / (2.0 * agm(1.0, kp));
}

inline double ellipK(double k)
{
    require(k >= 0 && k < 1, "ellipK: modulus must lie in [0, 1)");
    return ellipK_from_complement(std::sqrt((1.0 - k) * (1.0 + k)));
}

enum class ThetaKind { theta2, theta3, theta4 };

/// Direct summation until the next term drops below 1e-17 of the running sum.
inline double theta_numeric(ThetaKind kind, double q)
{
    require(q >= 0 && q < 1, "theta_numeric: q must lie in [0, 1)");
    long double sum = 0;
    if (kind == ThetaKind::theta2) {
        if (q == 0)
            return 0;
        const long double lq = std::log(static_cast<long double>(q));
        for (int n = 0;; ++n) {
            const long double t = 2 * std::exp(lq * (n + 0.5L) * (n + 0.5L));
            sum += t;
            if (t < 1e-17L * sum)
                break;
        }
        return static_cast<double>(sum);
    }
    sum = 1;
    if (q == 0)
        return 1;
    const long double lq = std::log(static_cast<long double>(q));
    for (int n = 1;; ++n) {
        const long double t = 2 * std::exp(lq * n * n);
        sum += (kind == ThetaKind::theta4 && n % 2 != 0) ? -t : t;
        if (t < 1e-17L * std::fabs(sum))
            break;
    }
    return static_cast<double>(sum);
}

struct EllipticContext {
    double r;
    double q;
    double k;
    double kprime;
    double K;
    double Kprime;
    double residual; // |K'/K - sqrt(r)|
};

/// k_r = (theta2/theta3)^2 at q = exp(-pi sqrt r); k' from theta4 keeps
/// full relative accuracy when k is close to 1.
inline EllipticContext singular_modulus(double r, double tolerance = 1e-9)
{
    require(r > 0 && std::isfinite(r), "singular_modulus: r must be positive");
    const double q = std::exp(-pi * std::sqrt(r));
    const double t2 = theta_numeric(ThetaKind::theta2, q);
    const double t3 = theta_numeric(ThetaKind::theta3, q);
    const double t4 = theta_numeric(ThetaKind::theta4, q);
    EllipticContext c{};
    c.r = r;
    c.q = q;
    c.k = (t2 / t3) * (t2 / t3);
    c.kprime = (t4 / t3) * (t4 / t3);
    c.K = ellipK_from_complement(c.kprime);
    c.Kprime = ellipK_from_complement(c.k);
    c.residual = std::fabs(c.Kprime / c.K - std::sqrt(r));
    if (!(c.residual < tolerance))
        throw cross_check_failure("singular_modulus: K'/K misses sqrt(r) by " + std::to_string(c.residual));
    return c;
}

/// m_{n,r} = K(k_{n^2 r}) / K(k_r).
inline double multiplier(int n, double r)
{
    require(n >= 1, "multiplier: n must be positive");
    const auto base = singular_modulus(r);
    if (n == 1)
        return base.K / base.K;
    return singular_modulus(static_cast<double>(n) * n * r).K / base.K;
}

struct IdentityResult {
    double lhs;
    double rhs;
    double residual;
};

enum class Identity { jacobiK, lambert, two_form, weber };

inline const char * identity_name(Identity which)
{
    switch (which) {
    case Identity::jacobiK:
        return "jacobik";
    case Identity::lambert:
        return "lambert";
    case Identity::two_form:
        return "app1";
    case Identity::weber:
        return "weber";
    }
    return "?";
}

struct IdentityParams {
    double r = 1;
    int terms = 200; // outer terms of the Lambert double series
    std::int64_t A = 1, B = 1, C = 0, D = 0;
};

namespace detail {

// sum over n in Z of q^(A n^2 + C n), summed outward from the minimum.
inline long double shifted_theta(double q, std::int64_t A, std::int64_t C)
{
    const long double lq = std::log(static_cast<long double>(q));
    const std::int64_t centre = static_cast<std::int64_t>(std::llround(-static_cast<double>(C) / (2.0 * A)));
    auto term = [&](std::int64_t n) { return std::exp(lq * static_cast<long double>(A * n * n + C * n)); };
    long double sum = term(centre);
    for (int dir : {1, -1})
        for (std::int64_t n = centre + dir;; n += dir) {
            const long double t = term(n);
            sum += t;
            if (t < 1e-19L * sum)
                break;
        }
    return sum;
}

} // namespace detail

inline IdentityResult identity_check(Identity which, const IdentityParams & p)
{
    require(p.r > 0, "identity_check: r must be positive");
    const auto ctx = singular_modulus(p.r);
    const double q = ctx.q;
    const long double two_k_over_pi = 2.0L * ctx.K / pi;
    switch (which) {
    case Identity::jacobiK: {
        const long double t3 = theta_numeric(ThetaKind::theta3, q);
        const double lhs = static_cast<double>(t3 * t3);
        const double rhs = static_cast<double>(two_k_over_pi);
        return {lhs, rhs, std::fabs(lhs - rhs)};
    }
    case Identity::lambert: {
        require(p.terms >= 1, "identity_check: lambert needs at least one term");
        // 1 + 4 sum_{m=1}^{terms} sum_{l>=0} (-1)^l q^((2l+1)m); each inner
        // series is alternating with decreasing terms.
        long double sum = 1;
        for (int m = 1; m <= p.terms; ++m) {
            long double inner = 0;
            const long double qm = std::pow(static_cast<long double>(q), m);
            const long double q2m = qm * qm;
            long double t = qm;
            for (int l = 0; t > 1e-22L; ++l, t *= q2m)
                inner += (l % 2 == 0) ? t : -t;
            sum += 4 * inner;
        }
        const double lhs = static_cast<double>(two_k_over_pi);
        const double rhs = static_cast<double>(sum);
        return {lhs, rhs, std::fabs(lhs - rhs)};
    }
    case Identity::two_form: {
        require(p.A >= 1 && p.B >= 1 && std::gcd(p.A, p.B) == 1, "two_form: needs A, B >= 1 coprime");
        require(p.C % (2 * p.A) == 0 && p.D % (2 * p.B) == 0, "two_form: needs 2A | C and 2B | D");
        const long double lhs = detail::shifted_theta(q, p.A, p.C) * detail::shifted_theta(q, p.B, p.D);
        const long double n0 =
            static_cast<long double>(p.C * p.C) / (4 * p.A) + static_cast<long double>(p.D * p.D) / (4 * p.B);
        const long double mA = multiplier(static_cast<int>(p.A), p.r);
        const long double mB = multiplier(static_cast<int>(p.B), p.r);
        const long double rhs = std::pow(static_cast<long double>(q), -n0) * two_k_over_pi * std::sqrt(mA * mB);
        return {static_cast<double>(lhs), static_cast<double>(rhs), static_cast<double>(std::fabs(lhs - rhs))};
    }
    case Identity::weber: {
        long double prod = 1;
        for (int n = 1;; ++n) {
            const long double a = std::pow(static_cast<long double>(q), 2 * n);
            const long double b = std::pow(static_cast<long double>(q), 2 * n - 1);
            prod *= (1 + a) / (1 + b);
            if (b < 1e-21L)
                break;
        }
        const long double p2 = prod * prod, p4 = p2 * p2;
        const double lhs = static_cast<double>(16 * q * p4 * p4);
        const double ratio = theta_numeric(ThetaKind::theta2, q) / theta_numeric(ThetaKind::theta3, q);
        const double rhs = ratio * ratio * ratio * ratio;
        return {lhs, rhs, std::fabs(lhs - rhs)};
    }
    }
    throw precondition_error("identity_check: unknown identity");
}

enum class SinhIdentity { general, chi0, triangular, kh };

struct SinhParams {
    SinhParams(double x_ = 1) : x(x_) {}

    double x;
    std::function<std::int64_t(std::int64_t)> X; // general only
    int k = 3, h = 2;                             // kh only
};

namespace detail {

// sum_{n>=1} w(n) n^2 / sinh^2(n x), stopped once the terms are negligible
// for several consecutive n.
inline long double sinh_sum(const std::function<long double(std::int64_t)> & w, double x)
{
    long double sum = 0;
    int quiet = 0;
    for (std::int64_t n = 1; quiet < 8; ++n) {
        const long double s = std::sinh(static_cast<long double>(n) * x);
        const long double base = static_cast<long double>(n) * n / (s * s);
        sum += w(n) * base;
        quiet = base < 1e-20L ? quiet + 1 : 0;
    }
    return sum;
}

// Smallest N with 4 N^2 e^(-2 N x) * N below 1e-18, the cutoff for the
// q-series side.
inline int series_cutoff(double x)
{
    int N = 8;
    while (std::log(4.0 * N * N * N) - 2.0 * N * x > std::log(1e-18))
        ++N;
    return N;
}

// -d^2/dx^2 of sum c_N q^N at q = exp(-2x): -sum 4 N^2 c_N q^N.
inline long double second_derivative_rhs(const std::vector<Rational> & c, double x)
{
    long double sum = 0;
    for (std::size_t N = 1; N < c.size(); ++N)
        if (!is_zero(c[N]))
            sum += 4.0L * N * N * c[N].get_d() * std::exp(-2.0L * N * x);
    return -sum;
}

// Integer-exponent coefficients 0..N-1 of the log of a series.
inline std::vector<Rational> log_coeffs(const qseries::HalfLaurentSeries & f, int N)
{
    const auto l = qseries::log(f);
    std::vector<Rational> c(static_cast<std::size_t>(N));
    for (int n = 1; n < N; ++n)
        c[static_cast<std::size_t>(n)] = l.coeff(2 * n);
    return c;
}

} // namespace detail

inline IdentityResult sinh_identity_check(SinhIdentity which, const SinhParams & p)
{
    require(p.x > 0 && std::isfinite(p.x), "sinh_identity_check: x must be positive");
    const double x = p.x;
    const int N = detail::series_cutoff(x);
    long double lhs = 0;
    std::vector<Rational> c;
    switch (which) {
    case SinhIdentity::general: {
        require(static_cast<bool>(p.X), "sinh_identity_check: general form needs an arithmetic function");
        lhs = detail::sinh_sum([&](std::int64_t n) { return static_cast<long double>(p.X(n)); }, x);
        // log prod (1 - q^n)^X(n) = -sum_N q^N sum_{n | N} X(n) n / N
        c.assign(static_cast<std::size_t>(N), Rational(0));
        for (int M = 1; M < N; ++M) {
            Rational s = 0;
            for (std::int64_t d : arith::divisors(M))
                s += Rational(make_bigint(p.X(d) * d), make_bigint(M));
            s.canonicalize();
            c[static_cast<std::size_t>(M)] = -s;
        }
        break;
    }
    case SinhIdentity::chi0:
        lhs = detail::sinh_sum([](std::int64_t n) { return static_cast<long double>(arith::chi0(n)); }, x);
        c = detail::log_coeffs(theta::series(theta::Theta3{}, N), N);
        break;
    case SinhIdentity::triangular: {
        lhs = detail::sinh_sum([](std::int64_t n) { return n % 2 == 0 ? 1.0L : -1.0L; }, x);
        // The lattice sum of q^(n(n+1)/2) starts with 2; the constant drops out.
        const auto tri = theta::series(theta::Triangular{1}, N);
        c = detail::log_coeffs(qseries::scale(tri, Rational(1, 2)), N);
        break;
    }
    case SinhIdentity::kh: {
        require(p.k >= 1 && p.h != 0 && p.k > std::abs(p.h), "kh form: requires k > |h| > 0");
        lhs = detail::sinh_sum(
            [&](std::int64_t n) { return static_cast<long double>(arith::chi_kh(p.k, p.h, n)); }, x);
        c = detail::log_coeffs(theta::series(theta::General{p.k, p.h, true}, N), N);
        break;
    }
    }
    const long double rhs = detail::second_derivative_rhs(c, x);
    return {static_cast<double>(lhs), static_cast<double>(rhs), static_cast<double>(std::fabs(lhs - rhs))};
}

} // namespace qrep::elliptic
