#pragma once

// Lattice points in the disk i^2 + j^2 <= x and the oscillatory series
// around them: the Bessel-series formula for the count, its asymptotic
// expansion, the Fresnel closed form of the partial sums of
// cos(2 pi sqrt(n a) + pi/4) / n^(3/4), Euler-Maclaurin diagnostics, and scans.

#include <cmath>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "qrep/arith.hpp"
#include "qrep/error.hpp"
#include "qrep/parallel.hpp"
#include "qrep/rational.hpp"

namespace qrep::circle {

inline constexpr double pi = 3.14159265358979323846;

// ---------------------------------------------------------------- counts

/// #{(i, j) in Z^2 : i^2 + j^2 <= x}, by integer column counting.
inline std::int64_t lattice_count(double x)
{
    require(x >= 0 && std::isfinite(x), "lattice_count: x must be finite and nonnegative");
    const auto n = static_cast<std::int64_t>(std::floor(x));
    const std::int64_t r = arith::isqrt(n);
    std::int64_t count = 2 * r + 1;
    for (std::int64_t i = 1; i <= r; ++i)
        count += 2 * (2 * arith::isqrt(n - i * i) + 1);
    return count;
}

/// r2(m) for 0 <= m <= n_max by enumerating the quarter disk.
inline std::vector<std::int32_t> r2_table(std::int64_t n_max)
{
    require(n_max >= 0, "r2_table: n_max must be nonnegative");
    std::vector<std::int32_t> r(static_cast<std::size_t>(n_max) + 1, 0);
    for (std::int64_t i = 0; i * i <= n_max; ++i) {
        const int wi = i == 0 ? 1 : 2;
        for (std::int64_t j = 0; i * i + j * j <= n_max; ++j)
            r[static_cast<std::size_t>(i * i + j * j)] += wi * (j == 0 ? 1 : 2);
    }
    return r;
}

// ---------------------------------------------------------------- c1 and J1

/// c1(m) = (-1)^m (-1/2)_m (3/2)_m / m!.
inline Rational c1(int m)
{
    require(m >= 0, "c1: m must be nonnegative");
    Rational v = 1;
    for (int j = 0; j < m; ++j)
        v *= -make_rational(2 * j - 1, 2) * make_rational(2 * j + 3, 2) / (j + 1);
    return v;
}

/// Coefficient of the order-m term of the N = 1 display, 2 c1(m) / 4^m.
inline Rational expansion_constant(int m)
{
    Rational v = 2 * c1(m);
    for (int j = 0; j < m; ++j)
        v /= 4;
    return v;
}

inline double c1_double(int m)
{
    static const std::vector<double> table = [] {
        std::vector<double> t;
        for (int j = 0; j < 64; ++j)
            t.push_back(c1(j).get_d());
        return t;
    }();
    return m < static_cast<int>(table.size()) ? table[static_cast<std::size_t>(m)] : c1(m).get_d();
}

inline double bessel_j1_series(double x)
{
    require(x >= 0 && std::isfinite(x), "bessel_j1: x must be finite and nonnegative");
    if (x <= 8) {
        const double h2 = 0.25 * x * x;
        double term = 0.5 * x, sum = term;
        for (int k = 0; k < 200; ++k) {
            term *= -h2 / ((k + 1.0) * (k + 2.0));
            sum += term;
            if (std::fabs(term) < 1e-18 * std::fabs(sum) + 1e-300)
                break;
        }
        return sum;
    }
    // Terms peak near e^x, so carry about x log2(e) extra bits.
    const auto bits = static_cast<mp_bitcnt_t>(64 + 1.45 * x + 10);
    mpf_class h2(x, bits), term(x, bits), sum(0, bits), eps(1e-22, bits);
    h2 = h2 * h2 / 4;
    term /= 2;
    sum = term;
    for (long k = 0;; ++k) {
        term *= -h2;
        term /= (k + 1) * (k + 2);
        sum += term;
        if (k > x && abs(term) < eps)
            break;
    }
    return sum.get_d();
}

/// J1(x) by the Hankel expansion with n = 0..N in both the cosine and sine sums.
inline double bessel_j1_asymptotic(double x, int N)
{
    require(x > 0 && std::isfinite(x), "bessel_j1 asymptotic: x must be positive");
    require(N >= 0, "bessel_j1 asymptotic: N must be nonnegative");
    const double inv = 1.0 / (2.0 * x);
    double p = 0, q = 0, pw = 1, sign = 1;
    for (int n = 0; n <= N; ++n) {
        p += sign * c1_double(2 * n) * pw;
        pw *= inv;
        q += sign * c1_double(2 * n + 1) * pw;
        pw *= inv;
        sign = -sign;
    }
    const double chi = x - 0.75 * pi;
    return std::sqrt(2.0 / (pi * x)) * (std::cos(chi) * p - std::sin(chi) * q);
}

/// Size of the first omitted terms of the expansion, times the prefactor.
inline double bessel_j1_asymptotic_error(double x, int N)
{
    require(x > 0 && N >= 0, "bessel_j1 asymptotic: x must be positive, N nonnegative");
    const double a = std::fabs(c1_double(2 * N + 2)) * std::pow(2 * x, -(2 * N + 2));
    const double b = std::fabs(c1_double(2 * N + 3)) * std::pow(2 * x, -(2 * N + 3));
    return std::sqrt(2.0 / (pi * x)) * std::max(a, b);
}

enum class BesselMethod { series, asymptotic };

inline double bessel_j1(double x, BesselMethod method = BesselMethod::series, int N = 3)
{
    return method == BesselMethod::series ? bessel_j1_series(x) : bessel_j1_asymptotic(x, N);
}

/// Series below 12, twelve-term asymptotic above; used inside long sums.
inline double bessel_j1_fast(double x)
{
    return x < 12 ? bessel_j1_series(x) : bessel_j1_asymptotic(x, 5);
}

// ---------------------------------------------------------------- truncated series

/// Cutoffs for the conditionally convergent series. The value reported is
/// the mean of the last smooth_window partial sums, and that averaging is
/// applied smooth_passes times.
struct TruncationSpec {
    std::int64_t n_cut = 2000;
    std::int64_t k_cut = 2000;
    std::int64_t smooth_window = 64;
    int smooth_passes = 1;

    void validate() const
    {
        require(n_cut >= 1 && k_cut >= 1, "TruncationSpec: cutoffs must be positive");
        require(smooth_window >= 1 && smooth_passes >= 1, "TruncationSpec: smoothing must be positive");
        require(smooth_passes * (smooth_window - 1) < n_cut, "TruncationSpec: smoothing span exceeds n_cut");
    }
};

/// Repeated moving average of the partial sums; returns the last value.
inline double smoothed_limit(std::vector<long double> partial, std::int64_t window, int passes)
{
    const auto w = static_cast<std::size_t>(window);
    require(!partial.empty() && static_cast<std::size_t>(passes) * (w - 1) < partial.size(),
            "smoothing span exceeds the number of partial sums");
    std::vector<long double> prefix;
    for (int p = 0; p < passes && w > 1; ++p) {
        prefix.assign(partial.size() + 1, 0);
        for (std::size_t i = 0; i < partial.size(); ++i)
            prefix[i + 1] = prefix[i] + partial[i];
        std::vector<long double> next(partial.size() - w + 1);
        for (std::size_t i = 0; i < next.size(); ++i)
            next[i] = (prefix[i + w] - prefix[i]) / static_cast<long double>(w);
        partial.swap(next);
    }
    return static_cast<double>(partial.back());
}

template <class Term>
double smoothed_series(std::int64_t count, const TruncationSpec & spec, Term term)
{
    std::vector<long double> partial(static_cast<std::size_t>(count));
    long double s = 0;
    for (std::int64_t i = 0; i < count; ++i)
        partial[static_cast<std::size_t>(i)] = s += term(i + 1);
    return smoothed_limit(std::move(partial), spec.smooth_window, spec.smooth_passes);
}

/// pi x + sqrt(x) sum_{n <= n_cut} r2(n) n^(-1/2) J1(2 pi sqrt(n x)).
inline double hardy_sum(double x, const TruncationSpec & spec = {100000, 1, 64, 1})
{
    require(x > 0 && std::isfinite(x), "hardy_sum: x must be positive");
    require(x != std::floor(x), "hardy_sum: x must not be an integer (the count jumps there)");
    spec.validate();
    const auto r2 = r2_table(spec.n_cut);
    const double sx = std::sqrt(x);
    return pi * x + smoothed_series(spec.n_cut, spec, [&](std::int64_t n) {
               const double r = r2[static_cast<std::size_t>(n)];
               if (r == 0)
                   return 0.0L;
               const double sn = std::sqrt(static_cast<double>(n));
               return static_cast<long double>(sx * r / sn * bessel_j1_fast(2 * pi * sn * sx));
           });
}

enum class Oscillatory { M, N, P, Q };

namespace detail {

inline double grouped_oscillatory(const std::vector<std::int32_t> & r2, bool sine, double s, double a,
                                  double b, const TruncationSpec & spec)
{
    // sum over n and odd k of (-1)^((k+1)/2) g(nk) is -(1/4) sum_m r2(m) g(m).
    return smoothed_series(spec.n_cut, spec, [&](std::int64_t m) {
        const double r = r2[static_cast<std::size_t>(m)];
        if (r == 0)
            return 0.0L;
        const double md = static_cast<double>(m);
        const double arg = a + b * std::sqrt(md);
        return static_cast<long double>(-0.25 * r * std::pow(md, -s) * (sine ? std::sin(arg) : std::cos(arg)));
    });
}

} // namespace detail

/// M_s, N_s: sums over odd k <= k_cut of (-1)^((k+1)/2) cos|sin(a + b sqrt k) / k^s.
/// P_s, Q_s: the double sums over n and odd k, taken in order of the product n k <= n_cut.
inline double oscillatory_sum(Oscillatory which, double s, double a, double b, const TruncationSpec & spec = {})
{
    spec.validate();
    if (which == Oscillatory::P || which == Oscillatory::Q)
        return detail::grouped_oscillatory(r2_table(spec.n_cut), which == Oscillatory::Q, s, a, b, spec);
    const std::int64_t count = (spec.k_cut + 1) / 2;
    require(spec.smooth_passes * (spec.smooth_window - 1) < count, "oscillatory_sum: smoothing span exceeds k_cut");
    const bool sine = which == Oscillatory::N;
    return smoothed_series(count, spec, [&](std::int64_t i) {
        const double k = static_cast<double>(2 * i - 1);
        const double arg = a + b * std::sqrt(k);
        const double sign = i % 2 == 0 ? 1.0 : -1.0;
        return static_cast<long double>(sign * (sine ? std::sin(arg) : std::cos(arg)) * std::pow(k, -s));
    });
}

/// R(x) from the asymptotic expansion of the Bessel series with j = 0..N:
/// (4/pi) sum_j [(-1)^j c1(2j) x^(1/4-j) (4 pi)^(-2j) P_{3/4+j}
///              - (-1)^j c1(2j+1) x^(-1/4-j) (4 pi)^(-2j-1) Q_{5/4+j}], at (pi/4, 2 pi sqrt x).
inline double R_expansion(double x, int N, const TruncationSpec & spec = {})
{
    require(x > 1 && std::isfinite(x), "R_expansion: x must exceed 1");
    require(N >= 0, "R_expansion: N must be nonnegative");
    spec.validate();
    const auto r2 = r2_table(spec.n_cut);
    const double a = pi / 4, b = 2 * pi * std::sqrt(x);
    double total = 0;
    for (int j = 0; j <= N; ++j) {
        const double sign = j % 2 == 0 ? 1.0 : -1.0;
        const double cp = sign * c1_double(2 * j) * std::pow(x, 0.25 - j) * std::pow(4 * pi, -2 * j);
        const double cq = sign * c1_double(2 * j + 1) * std::pow(x, -0.25 - j) * std::pow(4 * pi, -2 * j - 1);
        total += cp * detail::grouped_oscillatory(r2, false, 0.75 + j, a, b, spec);
        total -= cq * detail::grouped_oscillatory(r2, true, 1.25 + j, a, b, spec);
    }
    return 4 / pi * total;
}

/// sum over n <= n_cut, l <= k_cut of (-1)^(l-1) cos(2 pi sqrt(n (2l-1) x) + pi/4) / (n (2l-1))^(3/4);
/// the inner l-sums and the outer n-sum are each smoothed.
inline double S_sum(double x, const TruncationSpec & spec = {})
{
    require(x > 0 && std::isfinite(x), "S_sum: x must be positive");
    spec.validate();
    require(spec.smooth_passes * (spec.smooth_window - 1) < spec.k_cut, "S_sum: smoothing span exceeds k_cut");
    std::vector<double> inner(static_cast<std::size_t>(spec.n_cut));
    parallel_for(inner.size(), [&](std::size_t idx) {
        const double n = static_cast<double>(idx + 1);
        inner[idx] = smoothed_series(spec.k_cut, spec, [&](std::int64_t l) {
                         const double k = static_cast<double>(2 * l - 1);
                         const double sign = l % 2 == 1 ? 1.0 : -1.0;
                         return static_cast<long double>(sign * std::cos(2 * pi * std::sqrt(n * k * x) + pi / 4) *
                                                         std::pow(k, -0.75));
                     }) *
                     std::pow(n, -0.75);
    });
    return smoothed_series(spec.n_cut, spec,
                           [&](std::int64_t n) { return static_cast<long double>(inner[static_cast<std::size_t>(n - 1)]); });
}

// ---------------------------------------------------------------- G sums

/// Running sums G(h, x, 1..M) of cos(2 pi sqrt(n x) + pi/4) / n^(3/4 - h), compensated.
inline std::vector<double> G_partial_sums(double h, double x, std::int64_t M)
{
    require(h >= 0 && h < 0.25, "G: h must lie in [0, 1/4)");
    require(x > 0 && std::isfinite(x), "G: x must be positive");
    require(M >= 1, "G: M must be positive");
    std::vector<double> out(static_cast<std::size_t>(M));
    double sum = 0, comp = 0;
    for (std::int64_t n = 1; n <= M; ++n) {
        const double nd = static_cast<double>(n);
        const double t = std::cos(2 * pi * std::sqrt(nd * x) + pi / 4) * std::pow(nd, h - 0.75);
        const double s = sum + t;
        comp += std::fabs(sum) >= std::fabs(t) ? (sum - s) + t : (t - s) + sum;
        sum = s;
        out[static_cast<std::size_t>(n - 1)] = sum + comp;
    }
    return out;
}

inline double G(double h, double x, std::int64_t M) { return G_partial_sums(h, x, M).back(); }

/// max over 1 <= M' <= M of |G(h, x, M')|.
inline double G_sup(double h, double x, std::int64_t M)
{
    double sup = 0;
    for (double g : G_partial_sums(h, x, M))
        sup = std::max(sup, std::fabs(g));
    return sup;
}

// ---------------------------------------------------------------- Fresnel

struct Fresnel {
    double C;
    double S;
};

/// C(z) = int_0^z cos(pi t^2 / 2) dt and S(z) likewise: power series up to
/// z = 1.5, a continued fraction for erfc beyond.
inline Fresnel fresnel(double z)
{
    require(z >= 0 && std::isfinite(z), "fresnel: z must be finite and nonnegative");
    if (z <= 1.5) {
        const double u = 0.5 * pi * z * z;
        double c = 0, s = 0, term = z;
        for (int n = 0; n < 60; ++n) {
            // z u^n / n! / (2n + 1) is the n-th term of int_0^z exp(i pi t^2 / 2) dt up to i^n
            const double piece = term / (2 * n + 1);
            if (n % 4 == 0)
                c += piece;
            else if (n % 4 == 1)
                s += piece;
            else if (n % 4 == 2)
                c -= piece;
            else
                s -= piece;
            term *= u / (n + 1);
            if (std::fabs(term) < 1e-18)
                break;
        }
        return {c, s};
    }
    using cd = std::complex<double>;
    const double tiny = 1e-300;
    cd b(1.0, -pi * z * z);
    cd cc(1.0 / tiny, 0.0);
    cd d = 1.0 / b;
    cd h = d;
    for (int k = 2, n = -1; k < 1000; ++k) {
        n += 2;
        const double a = -static_cast<double>(n) * (n + 1);
        b += 4.0;
        d = 1.0 / (a * d + b);
        cc = b + a / cc;
        const cd del = cc * d;
        h *= del;
        if (std::fabs(del.real() - 1.0) + std::fabs(del.imag()) < 1e-16)
            break;
    }
    h *= cd(z, -z);
    const double ph = 0.5 * pi * z * z;
    const cd cs = cd(0.5, 0.5) * (1.0 - cd(std::cos(ph), std::sin(ph)) * h);
    return {cs.real(), cs.imag()};
}

/// Continuous Abel-summation value of sum_{n <= M} cos(2 pi sqrt(n a) + pi/4) / n^(3/4):
/// (2/(sqrt2 a^(1/4))) (-C(z1) + C(zM) + S(z1) - S(zM)) + (cos(2 pi sqrt a) - sin(2 pi sqrt a)) / sqrt2,
/// with z1 = 2 a^(1/4), zM = 2 (a M)^(1/4).
inline double fresnel_closed_sum(double a, std::int64_t M)
{
    require(a > 0 && std::isfinite(a), "fresnel_closed_sum: a must be positive");
    require(M >= 1, "fresnel_closed_sum: M must be positive");
    const double r2 = std::sqrt(2.0);
    const double qa = std::pow(a, 0.25);
    const auto f1 = fresnel(2 * qa);
    const auto fM = fresnel(2 * std::pow(a * static_cast<double>(M), 0.25));
    const double sa = 2 * pi * std::sqrt(a);
    return (2 * (-f1.C + fM.C + f1.S - fM.S)) / (r2 * qa) + (std::cos(sa) - std::sin(sa)) / r2;
}

/// The envelope for |G(0, a, M) - fresnel_closed_sum(a, M)|.
inline double fresnel_envelope(double a) { return 2 + 4 * pi * std::sqrt(a); }

// ---------------------------------------------------------------- Euler-Maclaurin

struct EulerMaclaurin {
    double sum;          // sum_{k=1}^M F(k)
    double approximation; // integral + endpoint + derivative terms
    double residual;     // |sum - approximation|
    double bound;        // (1/120) sum_{k=1}^{M-1} max_{[k,k+1]} |F''''|
};

/// Residual of sum_{k=1}^M F(k) against int_1^M F + (F(1)+F(M))/2 + (F'(M)-F'(1))/12.
template <class F, class DF, class IntF>
double euler_maclaurin_residual(F f, DF df, IntF integral, std::int64_t M)
{
    require(M >= 2, "euler_maclaurin: M must be at least 2");
    long double sum = 0;
    for (std::int64_t k = 1; k <= M; ++k)
        sum += f(static_cast<double>(k));
    const double m = static_cast<double>(M);
    const long double approx =
        integral(1.0, m) + 0.5L * (f(1.0) + f(m)) + (static_cast<long double>(df(m)) - df(1.0)) / 12;
    return static_cast<double>(std::fabs(sum - approx));
}

namespace em {

inline double phase(double a, double t) { return 2 * pi * std::sqrt(a * t) + pi / 4; }

/// F(t) = cos(2 pi sqrt(a t) + pi/4) / sqrt t.
inline double F(double a, double t) { return std::cos(phase(a, t)) / std::sqrt(t); }

inline double dF(double a, double t)
{
    const double p = phase(a, t);
    return -std::cos(p) / (2 * std::pow(t, 1.5)) - std::sqrt(a) * pi * std::sin(p) / t;
}

inline double d4F(double a, double t)
{
    const double p = phase(a, t), c = std::cos(p), s = std::sin(p);
    const double sat = std::sqrt(a * t);
    return std::pow(pi, 4) * a * a * c / std::pow(t, 2.5) - 5 * std::pow(pi, 3) * a * sat * s / std::pow(t, 3.5) +
           105 * pi * sat * s / (8 * std::pow(t, 4.5)) - 45 * pi * pi * a * c / (4 * std::pow(t, 3.5)) +
           105 * c / (16 * std::pow(t, 4.5));
}

/// Termwise majorant of |F''''| on [t, infinity); every term decreases in t.
inline double d4F_majorant(double a, double t)
{
    return std::pow(pi, 4) * a * a / std::pow(t, 2.5) + 5 * std::pow(pi, 3) * std::pow(a, 1.5) / std::pow(t, 3) +
           105 * pi * std::sqrt(a) / (8 * std::pow(t, 4)) + 45 * pi * pi * a / (4 * std::pow(t, 3.5)) +
           105 / (16 * std::pow(t, 4.5));
}

inline double integral(double a, double lo, double hi)
{
    const double sa = std::sqrt(a);
    return (std::sin(2 * pi * std::sqrt(a * hi) + pi / 4) - std::sin(2 * pi * std::sqrt(a * lo) + pi / 4)) / (pi * sa);
}

} // namespace em

inline EulerMaclaurin euler_maclaurin(double a, std::int64_t M)
{
    require(a > 0 && std::isfinite(a), "euler_maclaurin: a must be positive");
    require(M >= 2, "euler_maclaurin: M must be at least 2");
    EulerMaclaurin out{};
    long double sum = 0, bound = 0;
    for (std::int64_t k = 1; k <= M; ++k) {
        sum += em::F(a, static_cast<double>(k));
        if (k < M)
            bound += em::d4F_majorant(a, static_cast<double>(k));
    }
    const double m = static_cast<double>(M);
    out.sum = static_cast<double>(sum);
    out.approximation = em::integral(a, 1, m) + 0.5 * (em::F(a, 1) + em::F(a, m)) + (em::dF(a, m) - em::dF(a, 1)) / 12;
    out.residual = euler_maclaurin_residual([a](double t) { return em::F(a, t); },
                                            [a](double t) { return em::dF(a, t); },
                                            [a](double lo, double hi) { return em::integral(a, lo, hi); }, M);
    out.bound = static_cast<double>(bound / 120);
    return out;
}

inline double euler_maclaurin_residual(double a, std::int64_t M) { return euler_maclaurin(a, M).residual; }

// ---------------------------------------------------------------- scans

struct ScanRow {
    double x;
    std::int64_t count;
    double pix;
    double R;
    double Rscaled;
};

struct ScanOptions {
    std::vector<double> G_grid; // empty: default_G_grid()
    std::int64_t G_M_max = std::int64_t{1} << 16;
    bool keep_rows = true;
};

struct ScanSummary {
    std::int64_t rows = 0;
    double sup_abs_Rscaled = 0;
    double x_at_sup = 0;
    double sup_G = 0;
};

struct ScanResult {
    std::vector<ScanRow> rows;
    ScanSummary summary;
};

/// Twenty points 0.5, 1.25, ..., 14.75.
inline std::vector<double> default_G_grid()
{
    std::vector<double> g;
    for (int j = 0; j < 20; ++j)
        g.push_back(0.5 + 0.75 * j);
    return g;
}

inline ScanRow scan_row(double x, std::int64_t count)
{
    const double pix = pi * x;
    const double R = static_cast<double>(count) - pix;
    return {x, count, pix, R, R / std::pow(x, 0.25)};
}

/// Rows at x = step, 2 step, ..., up to x_max; counts come from cumulative
/// r2 sums. The summary carries sup |R / x^(1/4)| and sup |G(delta, x, M)|
/// over the G grid and M <= G_M_max.
inline ScanResult scan_R(double x_max, double step, double delta = 0.1, const ScanOptions & opts = {})
{
    require(x_max >= 1 && std::isfinite(x_max), "scan_R: x_max must be at least 1");
    require(step > 0, "scan_R: step must be positive");
    require(delta >= 0 && delta < 0.25, "scan_R: delta must lie in [0, 1/4)");
    require(opts.G_M_max >= 1, "scan_R: G_M_max must be positive");
    const auto n_rows = static_cast<std::int64_t>(std::floor(x_max / step * (1 + 1e-12)));
    const auto top = static_cast<std::int64_t>(std::floor(x_max));
    const auto r2 = r2_table(top);
    std::vector<std::int64_t> cumulative(r2.size());
    std::int64_t c = 0;
    for (std::size_t i = 0; i < r2.size(); ++i)
        cumulative[i] = c += r2[i];

    ScanResult out;
    const std::size_t blocks = 64;
    std::vector<ScanSummary> partial(blocks);
    if (opts.keep_rows)
        out.rows.resize(static_cast<std::size_t>(n_rows));
    parallel_for(blocks, [&](std::size_t b) {
        const std::int64_t lo = n_rows * static_cast<std::int64_t>(b) / static_cast<std::int64_t>(blocks);
        const std::int64_t hi = n_rows * static_cast<std::int64_t>(b + 1) / static_cast<std::int64_t>(blocks);
        ScanSummary & s = partial[b];
        for (std::int64_t i = lo; i < hi; ++i) {
            const double x = static_cast<double>(i + 1) * step;
            const auto fx = std::min(top, static_cast<std::int64_t>(std::floor(x)));
            const ScanRow row = scan_row(x, cumulative[static_cast<std::size_t>(fx)]);
            if (opts.keep_rows)
                out.rows[static_cast<std::size_t>(i)] = row;
            if (std::fabs(row.Rscaled) > s.sup_abs_Rscaled) {
                s.sup_abs_Rscaled = std::fabs(row.Rscaled);
                s.x_at_sup = x;
            }
        }
    });
    out.summary.rows = n_rows;
    for (const auto & s : partial)
        if (s.sup_abs_Rscaled > out.summary.sup_abs_Rscaled) {
            out.summary.sup_abs_Rscaled = s.sup_abs_Rscaled;
            out.summary.x_at_sup = s.x_at_sup;
        }

    const auto grid = opts.G_grid.empty() ? default_G_grid() : opts.G_grid;
    std::vector<double> sups(grid.size());
    parallel_for(grid.size(), [&](std::size_t i) { sups[i] = G_sup(delta, grid[i], opts.G_M_max); });
    for (double s : sups)
        out.summary.sup_G = std::max(out.summary.sup_G, s);
    return out;
}

} // namespace qrep::circle
