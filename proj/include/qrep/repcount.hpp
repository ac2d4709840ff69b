#pragma once

// Representation numbers: brute-force oracles for every form family, and the
// closed forms (divisor sums, class numbers, series coefficients) checked
// against them.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "qrep/arith.hpp"
#include "qrep/error.hpp"
#include "qrep/qseries.hpp"
#include "qrep/theta.hpp"

namespace qrep::repcount {

using qseries::HalfLaurentSeries;

enum class Convention { lattice, nonneg };
enum class Method { oracle, series, closed };

inline const char * method_name(Method m)
{
    switch (m) {
    case Method::oracle:
        return "oracle";
    case Method::series:
        return "series";
    case Method::closed:
        return "closed";
    }
    return "?";
}

inline const char * convention_name(Convention c) { return c == Convention::lattice ? "lattice" : "nonneg"; }

struct Term {
    std::int64_t a; // coefficient of x^2, positive
    std::int64_t b; // coefficient of x
};

/// n = (sum a_l x_l^2 + b_l x_l + constant) / scale.
struct FormSpec {
    std::int64_t scale = 1;
    std::vector<Term> terms;
    std::int64_t constant = 0;
    Convention convention = Convention::lattice;

    std::string describe() const
    {
        std::string s;
        for (const auto & t : terms) {
            if (!s.empty())
                s += " + ";
            s += std::to_string(t.a) + "x^2";
            if (t.b != 0)
                s += (t.b > 0 ? "+" : "") + std::to_string(t.b) + "x";
        }
        if (constant != 0)
            s += (constant > 0 ? " + " : " - ") + std::to_string(std::abs(constant));
        if (scale != 1)
            s = "(" + s + ")/" + std::to_string(scale);
        return s + " [" + convention_name(convention) + "]";
    }
};

struct RepTable {
    std::string label;
    std::int64_t n_min = 0;
    std::vector<std::int64_t> counts;
    Method method = Method::oracle;

    std::int64_t n_max() const { return n_min + static_cast<std::int64_t>(counts.size()) - 1; }
    std::int64_t at(std::int64_t n) const
    {
        require(n >= n_min && n <= n_max(), "RepTable: n out of range");
        return counts[static_cast<std::size_t>(n - n_min)];
    }
};

namespace detail {

// Smallest value of a x^2 + b x over the allowed x, and the x attaining it.
inline std::pair<std::int64_t, std::int64_t> term_minimum(const Term & t, Convention conv)
{
    std::int64_t x = qseries::floor_div(static_cast<int>(-t.b), static_cast<int>(2 * t.a));
    auto v = [&](std::int64_t y) { return t.a * y * y + t.b * y; };
    if (v(x + 1) < v(x))
        ++x;
    if (conv == Convention::nonneg && x < 0)
        x = 0;
    return {v(x), x};
}

inline std::vector<std::int64_t> coeffs_at_integers(const HalfLaurentSeries & f, std::int64_t n_max)
{
    require(f.order() > 2 * n_max, "series truncated below the requested range");
    std::vector<std::int64_t> out(static_cast<std::size_t>(n_max + 1));
    for (std::int64_t n = 0; n <= n_max; ++n)
        out[static_cast<std::size_t>(n)] = to_int64(f.coeff(static_cast<int>(2 * n)));
    return out;
}

} // namespace detail

/// Exhaustive enumeration over every variable within the bounds forced by
/// the other terms' minima.
inline RepTable oracle_count(const FormSpec & spec, std::int64_t n_max)
{
    require(!spec.terms.empty(), "oracle_count: form needs at least one term");
    require(n_max >= 0, "oracle_count: n_max must be nonnegative");
    require(spec.scale >= 1, "oracle_count: scale must be positive");
    for (const auto & t : spec.terms)
        require(t.a >= 1, "oracle_count: quadratic coefficients must be positive");

    const std::size_t L = spec.terms.size();
    std::vector<std::int64_t> mins(L), vertex(L), rest_min(L + 1, 0);
    for (std::size_t l = 0; l < L; ++l)
        std::tie(mins[l], vertex[l]) = detail::term_minimum(spec.terms[l], spec.convention);
    for (std::size_t l = L; l-- > 0;)
        rest_min[l] = rest_min[l + 1] + mins[l];

    const std::int64_t cap = spec.scale * n_max - spec.constant;
    std::vector<std::int64_t> counts(static_cast<std::size_t>(n_max + 1), 0);

    std::function<void(std::size_t, std::int64_t)> walk = [&](std::size_t l, std::int64_t acc) {
        if (l == L) {
            const std::int64_t total = acc + spec.constant;
            if (total >= 0 && total % spec.scale == 0)
                ++counts[static_cast<std::size_t>(total / spec.scale)];
            return;
        }
        const Term & t = spec.terms[l];
        const std::int64_t budget = cap - acc - rest_min[l + 1];
        auto value = [&](std::int64_t x) { return t.a * x * x + t.b * x; };
        for (std::int64_t x = vertex[l]; value(x) <= budget; ++x)
            walk(l + 1, acc + value(x));
        for (std::int64_t x = vertex[l] - 1; (spec.convention == Convention::lattice || x >= 0) && value(x) <= budget;
             --x)
            walk(l + 1, acc + value(x));
    };
    walk(0, 0);
    return {spec.describe(), 0, std::move(counts), Method::oracle};
}

inline std::int64_t oracle_count_at(const FormSpec & spec, std::int64_t n)
{
    return oracle_count(spec, n).counts.back();
}

inline FormSpec diagonal_form(const std::vector<std::int64_t> & A)
{
    FormSpec f;
    for (auto a : A)
        f.terms.push_back({a, 0});
    return f;
}

inline FormSpec triangular_form(std::int64_t m, int N, Convention conv)
{
    FormSpec f;
    f.scale = 2;
    f.terms.assign(static_cast<std::size_t>(N), Term{1, m});
    f.convention = conv;
    return f;
}

/// Jacobi: r2(n) = 4 sum_{d | n, d odd} (-1)^((d-1)/2), r2(0) = 1.
inline std::int64_t r2(std::int64_t n)
{
    require(n >= 0, "r2: n must be nonnegative");
    if (n == 0)
        return 1;
    return 4 * arith::divisor_sum(n, 0, arith::DivisorFilter::odd_signed());
}

namespace detail {

// sum_k r2(k) q^(A k), i.e. theta3(q^A)^2 built from the two-square formula.
inline HalfLaurentSeries r2_series(std::int64_t A, std::int64_t n_max)
{
    const int order = static_cast<int>(2 * (n_max + 1));
    std::vector<Rational> c(static_cast<std::size_t>(order));
    for (std::int64_t k = 0; A * k <= n_max; ++k)
        c[static_cast<std::size_t>(2 * A * k)] = static_cast<long>(r2(k));
    return HalfLaurentSeries(0, std::move(c));
}

inline std::int64_t gcd_all(const std::vector<std::int64_t> & A)
{
    std::int64_t g = 0;
    for (auto a : A)
        g = std::gcd(g, a);
    return g;
}

} // namespace detail

/// Representations by sum A_k x_k^2 as the square root of the product of the
/// two-square generating functions sum r2(k) q^(A_k k).
inline RepTable count_diagonal(const std::vector<std::int64_t> & A, std::int64_t n_max)
{
    require(!A.empty(), "count_diagonal: need at least one coefficient");
    require(n_max >= 0, "count_diagonal: n_max must be nonnegative");
    for (auto a : A)
        require(a >= 1, "count_diagonal: coefficients must be positive");
    require(detail::gcd_all(A) == 1, "count_diagonal: gcd of the coefficients must be 1");
    auto prod = detail::r2_series(A[0], n_max);
    for (std::size_t i = 1; i < A.size(); ++i)
        prod = qseries::mul(prod, detail::r2_series(A[i], n_max));
    std::string label = "diag[";
    for (std::size_t i = 0; i < A.size(); ++i)
        label += (i ? "," : "") + std::to_string(A[i]);
    label += "]";
    return {label, 0, detail::coeffs_at_integers(qseries::sqrt(prod), n_max), Method::series};
}

inline RepTable count_two_form_table(std::int64_t A, std::int64_t B, std::int64_t n_max)
{
    require(A >= 1 && B >= 1, "count_two_form: A and B must be positive");
    require(std::gcd(A, B) == 1, "count_two_form: gcd(A, B) must be 1");
    auto t = count_diagonal({A, B}, n_max);
    t.label = std::to_string(A) + "x^2+" + std::to_string(B) + "y^2";
    return t;
}

inline std::int64_t count_two_form(std::int64_t A, std::int64_t B, std::int64_t n)
{
    require(n >= 0, "count_two_form: n must be nonnegative");
    return count_two_form_table(A, B, n).counts.back();
}

/// Ax^2 + By^2 + Cx + Dy + E = n, by completing the square.
inline std::int64_t affine_shift(std::int64_t A, std::int64_t B, std::int64_t C, std::int64_t D, std::int64_t E)
{
    require(A >= 1 && B >= 1, "count_affine: A and B must be positive");
    require(std::gcd(A, B) == 1, "count_affine: gcd(A, B) must be 1");
    require(C % (2 * A) == 0, "count_affine: C must be divisible by 2A");
    require(D % (2 * B) == 0, "count_affine: D must be divisible by 2B");
    const std::int64_t L1 = C / (2 * A), L2 = D / (2 * B);
    return A * L1 * L1 + B * L2 * L2 - E;
}

inline std::int64_t count_affine(std::int64_t A, std::int64_t B, std::int64_t C, std::int64_t D, std::int64_t E,
                                 std::int64_t n)
{
    const std::int64_t m = n + affine_shift(A, B, C, D, E);
    return m < 0 ? 0 : count_two_form(A, B, m);
}

/// Distinct integer roots of P(t) = n, P given by coefficients p_0, p_1, ...
inline std::vector<std::int64_t> integer_roots(const std::vector<std::int64_t> & P, std::int64_t n)
{
    require(!P.empty(), "polynomial must be nonconstant");
    std::vector<BigInt> q;
    for (auto p : P)
        q.push_back(make_bigint(p));
    q[0] -= n;
    while (q.size() > 1 && sgn(q.back()) == 0)
        q.pop_back();
    require(q.size() > 1, "polynomial must be nonconstant");
    auto eval = [&](std::int64_t t) {
        BigInt r = 0;
        for (auto it = q.rbegin(); it != q.rend(); ++it)
            r = r * t + *it;
        return r;
    };
    std::vector<std::int64_t> roots;
    std::size_t low = 0;
    while (sgn(q[low]) == 0)
        ++low;
    if (low > 0)
        roots.push_back(0);
    // Nonzero integer roots divide the lowest nonzero coefficient.
    const std::int64_t c = to_int64(BigInt(abs(q[low])));
    for (std::int64_t d : arith::divisors(c))
        for (std::int64_t t : {d, -d})
            if (sgn(eval(t)) == 0)
                roots.push_back(t);
    std::sort(roots.begin(), roots.end());
    return roots;
}

/// Solutions of P(Ax^2 + By^2 + Cx + Dy + E) = n: the affine count summed
/// over the integer roots n' of P(n') = n.
inline std::int64_t count_poly_composed(const std::vector<std::int64_t> & P, std::int64_t A, std::int64_t B,
                                        std::int64_t C, std::int64_t D, std::int64_t E, std::int64_t n)
{
    const std::int64_t shift = affine_shift(A, B, C, D, E);
    std::int64_t total = 0;
    for (std::int64_t root : integer_roots(P, n))
        if (root + shift >= 0)
            total += count_two_form(A, B, root + shift);
    return total;
}

/// Ordered pairs (a, b) of set elements with a + b = n, for the sets of
/// nu-th powers or polynomial values of nonnegative integers.
inline std::int64_t count_power_sum(const arith::IndicatorKind & kind, std::int64_t n)
{
    require(n >= 0, "count_power_sum: n must be nonnegative");
    const auto ind = arith::indicator_table(kind, n);
    std::int64_t total = 0;
    for (std::int64_t k = 0; k <= n; ++k)
        total += ind[static_cast<std::size_t>(k)] * ind[static_cast<std::size_t>(n - k)];
    return total;
}

inline RepTable count_power_sum_table(const arith::IndicatorKind & kind, std::int64_t n_max)
{
    require(n_max >= 0, "count_power_sum: n_max must be nonnegative");
    const auto ind = arith::indicator_table(kind, n_max);
    std::vector<std::int64_t> members;
    for (std::int64_t k = 0; k <= n_max; ++k)
        if (ind[static_cast<std::size_t>(k)])
            members.push_back(k);
    std::vector<std::int64_t> counts(static_cast<std::size_t>(n_max + 1), 0);
    for (auto a : members)
        for (auto b : members) {
            if (a + b > n_max)
                break;
            ++counts[static_cast<std::size_t>(a + b)];
        }
    return {"power_sum", 0, std::move(counts), Method::closed};
}

/// Ordered pairs with x^nu + y^nu = n, nu odd, by direct search.
inline std::int64_t oracle_odd_power_pairs(int nu, std::int64_t n, Convention domain)
{
    require(nu == 3 || nu == 5, "oracle_odd_power_pairs: nu must be 3 or 5");
    require(n >= 1, "oracle_odd_power_pairs: n must be positive");
    // x^2 - xy + y^2 >= 3x^2/4 and the quartic cofactor is >= x^4/2, and both
    // cofactors are at most n since x + y >= 1.
    const double bound = nu == 3 ? 2.0 * std::sqrt(static_cast<double>(n) / 3.0) : std::pow(2.0 * n, 0.25);
    const std::int64_t B = static_cast<std::int64_t>(bound) + 1;
    const std::int64_t lo = domain == Convention::nonneg ? 0 : -B;
    std::int64_t count = 0;
    for (std::int64_t x = lo; x <= B; ++x) {
        BigInt xp;
        mpz_pow_ui(xp.get_mpz_t(), make_bigint(x).get_mpz_t(), static_cast<unsigned long>(nu));
        const BigInt rest = make_bigint(n) - xp;
        BigInt y;
        // Odd roots of negative numbers: mpz_root handles the sign.
        if (mpz_root(y.get_mpz_t(), rest.get_mpz_t(), static_cast<unsigned long>(nu)) == 0)
            continue;
        if (domain == Convention::nonneg && sgn(y) < 0)
            continue;
        ++count;
    }
    return count;
}

/// Sum over d | n of [d^3 = 4n] + 2 [d^3 != 4n] S((4n/d - d^2)/3); counts
/// ordered integer pairs with x^3 + y^3 = n.
inline std::int64_t cubic_count(std::int64_t n)
{
    require(n >= 1, "cubic_count: n must be positive");
    const arith::IndicatorKind S = arith::IndicatorKind::square();
    std::int64_t total = 0;
    for (std::int64_t d : arith::divisors(n)) {
        const BigInt d3 = make_bigint(d) * d * d;
        if (d3 == make_bigint(4) * n) {
            total += 1;
            continue;
        }
        Rational arg(make_bigint(4) * (n / d) - make_bigint(d) * d, 3);
        arg.canonicalize();
        total += 2 * arith::indicator(S, arg);
    }
    return total;
}

enum class QuinticVariant { literal, amended };

/// The two-fifth-powers formula. literal subtracts the diagonal term and
/// tests the smaller root on positive integers; amended adds it and allows 0.
inline std::int64_t quintic_count(std::int64_t n, QuinticVariant variant)
{
    require(n >= 0, "quintic_count: n must be nonnegative");
    if (n == 0)
        return 1;
    const arith::IndicatorKind S = arith::IndicatorKind::square();
    std::int64_t total = 0;
    for (std::int64_t d : arith::divisors(n)) {
        const BigInt dd = make_bigint(d);
        const BigInt d5 = dd * dd * dd * dd * dd;
        if (d5 == make_bigint(16) * n) {
            total += variant == QuinticVariant::literal ? -1 : 1;
            continue;
        }
        const BigInt inner = 5 * dd * dd * dd * dd + 20 * make_bigint(n / d);
        if (!arith::indicator(S, inner))
            continue;
        const BigInt outer = -25 * dd * dd + 10 * BigInt(sqrt(inner));
        if (!arith::indicator(S, outer))
            continue;
        Rational x(5 * dd - BigInt(sqrt(outer)), 10);
        x.canonicalize();
        if (!is_integer(x))
            continue;
        const int lower = variant == QuinticVariant::literal ? 1 : 0;
        if (x >= lower)
            total += 2;
    }
    return total;
}

/// Sums of N numbers t_m(x) = (x^2 + m x)/2, from the N-th power of the
/// triangular theta series.
inline RepTable tri_count(std::int64_t m, int N, std::int64_t n_max, Convention conv)
{
    require(m >= 0, "tri_count: m must be nonnegative");
    require(N >= 1, "tri_count: N must be positive");
    require(n_max >= 0, "tri_count: n_max must be nonnegative");
    const bool nonneg = conv == Convention::nonneg;
    const auto probe = theta::series(theta::Triangular{static_cast<int>(m), nonneg}, 1);
    const int val = probe.valuation().value_or(0); // half-units, <= 0
    const int order = static_cast<int>(n_max + 1) + ((N - 1) * -val + 1) / 2;
    const auto base = theta::series(theta::Triangular{static_cast<int>(m), nonneg}, order);
    const auto power = qseries::pow(base, static_cast<unsigned>(N));
    return {"t_" + std::to_string(m) + " x" + std::to_string(N) + " [" + convention_name(conv) + "]", 0,
            detail::coeffs_at_integers(power, n_max), Method::series};
}

/// Coefficients of theta3^N: representations as a sum of N squares.
inline RepTable r_N_squares(int N, std::int64_t n_max)
{
    require(N >= 1, "r_N_squares: N must be positive");
    require(n_max >= 0, "r_N_squares: n_max must be nonnegative");
    const auto th = theta::series(theta::Theta3{}, static_cast<int>(n_max + 1));
    return {"r_" + std::to_string(N), 0, detail::coeffs_at_integers(qseries::pow(th, static_cast<unsigned>(N)), n_max),
            Method::series};
}

/// Lattice counts for m-triangular sums reduced to m in {0, 1}.
inline std::int64_t tri_reduce(std::int64_t m, int N, std::int64_t n)
{
    require(m >= 0 && N >= 1 && n >= 0, "tri_reduce: needs m >= 0, N >= 1, n >= 0");
    const std::int64_t p = m / 2;
    if (m % 2 == 1)
        return tri_count(1, N, n + N * p * (p + 1) / 2, Convention::lattice).counts.back();
    return r_N_squares(N, 2 * n + N * p * p).counts.back();
}

/// Two m-triangular numbers (lattice).
inline std::int64_t s_m(std::int64_t m, std::int64_t n)
{
    require(m >= 0 && n >= 0, "s_m: needs m >= 0 and n >= 0");
    if (m % 2 == 0) {
        const std::int64_t t = n + m * m / 4;
        return t == 0 ? 1 : 4 * arith::divisor_sum(t, 0, arith::DivisorFilter::odd_signed());
    }
    const std::int64_t t = m * m + 4 * n;
    return 4 * (arith::divisor_sum(t, 0, arith::DivisorFilter::residue(1, 4)) -
                arith::divisor_sum(t, 0, arith::DivisorFilter::residue(3, 4)));
}

inline std::int64_t r4_closed(std::int64_t n)
{
    require(n >= 1, "r4_closed: n must be positive");
    if (n % 2 == 1)
        return 8 * arith::sigma(n);
    return 24 * arith::divisor_sum(n, 1, arith::DivisorFilter::odd());
}

inline bool is_squarefree(std::int64_t n)
{
    for (std::int64_t p = 2; p * p <= n; ++p)
        if (n % (p * p) == 0)
            return false;
    return true;
}

/// Three squares via class numbers. Throws domain_error outside the range
/// where the formula is validated; callers fall back to the series.
inline std::int64_t r3_closed(std::int64_t n)
{
    require(n >= 0, "r3_closed: n must be nonnegative");
    if (n == 0)
        throw domain_error("r3_closed: n = 0 is outside the closed-form domain");
    while (n % 4 == 0)
        n /= 4;
    if (!is_squarefree(n))
        throw domain_error("r3_closed: " + std::to_string(n) + " is not squarefree after removing factors of 4");
    switch (n) {
    case 1:
        return 6;
    case 2:
        return 12;
    case 3:
        return 8;
    default:
        break;
    }
    switch (n % 8) {
    case 3:
        return 24 * arith::class_number(-n);
    case 7:
        return 0;
    default:
        return 12 * arith::class_number(-4 * n);
    }
}

struct Count {
    std::int64_t value;
    Method method;
};

inline Count r3(std::int64_t n)
{
    require(n >= 0, "r3: n must be nonnegative");
    try {
        return {r3_closed(n), Method::closed};
    } catch (const domain_error &) {
        return {r_N_squares(3, n).counts.back(), Method::series};
    }
}

/// Three or four m-triangular numbers by the closed forms. Even m and N = 3
/// count in the lattice convention; odd m with N = 4 gives sigma_1, the
/// nonnegative-convention count when m = 1 and the lattice count / 16 in general.
inline Count tri_N_closed(std::int64_t m, int N, std::int64_t n)
{
    require(m >= 0 && n >= 0, "tri_N_closed: needs m >= 0 and n >= 0");
    require(N == 3 || N == 4, "tri_N_closed: N must be 3 or 4");
    const std::int64_t p = m / 2;
    if (N == 3) {
        require(m % 2 == 0, "tri_N_closed: no closed form for three odd-m triangular numbers");
        return r3(2 * n + 3 * p * p);
    }
    if (m % 2 == 0) {
        const std::int64_t t = 2 * n + 4 * p * p;
        return {t == 0 ? 1 : r4_closed(t), Method::closed};
    }
    return {arith::sigma(2 * n + 4 * p * (p + 1) + 1), Method::closed};
}

struct KH {
    int k;
    int h;
};

namespace detail {

inline void check_kh(const KH & t)
{
    require(t.h != 0 && t.k > std::abs(t.h), "exp method: each pair needs k > |h| > 0");
    require((t.k + t.h) % 2 != 0, "exp method: k and h must not have the same parity");
}

} // namespace detail

/// The exponent series sum_n (-1)^n sum_l f_{k_l,h_l}(n) q^n.
inline HalfLaurentSeries exp_method_exponent(const std::vector<KH> & terms, std::int64_t n_max)
{
    require(!terms.empty(), "exp method: need at least one term");
    for (const auto & t : terms)
        detail::check_kh(t);
    std::vector<Rational> a(static_cast<std::size_t>(2 * (n_max + 1)));
    for (std::int64_t n = 1; n <= n_max; ++n) {
        Rational s = 0;
        for (const auto & t : terms)
            s += arith::f_kh(t.k, t.h, n);
        a[static_cast<std::size_t>(2 * n)] = n % 2 == 0 ? s : Rational(-s);
    }
    return HalfLaurentSeries(0, std::move(a));
}

/// Representations by sum k_l x_l^2 + h_l x_l via the negated exponential.
inline RepTable exp_method_count(const std::vector<KH> & terms, std::int64_t n_max)
{
    require(n_max >= 0, "exp method: n_max must be nonnegative");
    const auto e = qseries::exp_neg(exp_method_exponent(terms, n_max));
    std::string label;
    for (const auto & t : terms)
        label += (label.empty() ? "" : " + ") + std::to_string(t.k) + "x^2" + (t.h > 0 ? "+" : "") +
                 std::to_string(t.h) + "x";
    return {label, 0, detail::coeffs_at_integers(e, n_max), Method::series};
}

inline FormSpec kh_form(const std::vector<KH> & terms)
{
    FormSpec f;
    for (const auto & t : terms)
        f.terms.push_back({t.k, t.h});
    return f;
}

/// The two worked examples whose exponent is written through sigma*_a and
/// I_a: 3x^2 - 2x + 3y^2 - 2y (a = 6, I_6) and 2x^2 - x + 2y^2 - y (a = 2, I_4).
enum class SigmaStarExample { three_minus_two, two_minus_one };

inline HalfLaurentSeries sigma_star_example_series(SigmaStarExample which, std::int64_t n_max)
{
    const std::int64_t a = which == SigmaStarExample::three_minus_two ? 6 : 2;
    const std::int64_t ia = which == SigmaStarExample::three_minus_two ? 6 : 4;
    std::vector<Rational> c(static_cast<std::size_t>(2 * (n_max + 1)));
    for (std::int64_t n = 1; n <= n_max; ++n) {
        Rational v = 2 * arith::sigma_star(a, n) + 2 * arith::indicator_I(ia, n);
        c[static_cast<std::size_t>(2 * n)] = n % 2 == 0 ? v : Rational(-v);
    }
    return qseries::exp_neg(HalfLaurentSeries(0, std::move(c)));
}

/// First n where the sigma* example disagrees with the oracle, if any.
inline std::optional<std::int64_t> sigma_star_example_first_mismatch(SigmaStarExample which, std::int64_t n_max)
{
    const auto s = sigma_star_example_series(which, n_max);
    const std::vector<KH> kh = which == SigmaStarExample::three_minus_two ? std::vector<KH>{{3, -2}, {3, -2}}
                                                                         : std::vector<KH>{{2, -1}, {2, -1}};
    const auto oracle = oracle_count(kh_form(kh), n_max);
    for (std::int64_t n = 0; n <= n_max; ++n)
        if (s.coeff(static_cast<int>(2 * n)) != oracle.counts[static_cast<std::size_t>(n)])
            return n;
    return std::nullopt;
}

} // namespace qrep::repcount
