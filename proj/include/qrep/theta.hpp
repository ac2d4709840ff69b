#pragma once

// Exact theta-type series: lattice sums and truncated infinite products,
// plus coefficientwise checks of the product identities relating them.

#include <cstdint>
#include <cstdlib>
#include <string>
#include <variant>
#include <vector>

#include "qrep/arith.hpp"
#include "qrep/error.hpp"
#include "qrep/qseries.hpp"

namespace qrep::theta {

using qseries::HalfLaurentSeries;

/// Sum over n of sign^n t^(a n^2 + b n) with t = q^(1/2), keeping every term
/// with exponent below `order_half`. `nonneg` restricts to n >= 0.
inline HalfLaurentSeries lattice_sum_half(int a, int b, int order_half, bool alternating = false,
                                          bool nonneg = false)
{
    require(a >= 1, "lattice_sum_half: quadratic coefficient must be positive");
    auto expo = [&](std::int64_t n) { return a * n * n + b * n; };
    // n* minimises a n^2 + b n over the integers (or over n >= 0).
    std::int64_t centre = qseries::floor_div(-b, 2 * a);
    if (expo(centre + 1) < expo(centre))
        ++centre;
    if (nonneg && centre < 0)
        centre = 0;
    const std::int64_t low = expo(centre);
    const int base = static_cast<int>(std::min<std::int64_t>(low, order_half - 1));
    std::vector<Rational> c(static_cast<std::size_t>(order_half - base));
    auto add_term = [&](std::int64_t n) {
        const std::int64_t e = expo(n);
        if (e >= order_half)
            return false;
        c[static_cast<std::size_t>(e - base)] += (alternating && (n % 2 != 0)) ? -1 : 1;
        return true;
    };
    for (std::int64_t n = centre; add_term(n); ++n) {
    }
    for (std::int64_t n = centre - 1; (!nonneg || n >= 0) && add_term(n); --n) {
    }
    return HalfLaurentSeries(base, std::move(c));
}

/// Product over j = 0, 1, ... (count factors, or unbounded when count < 0)
/// of (1 + sign t^(start + j step))^power, with t = q^(1/2) and power = +-1.
struct BinomialFamily {
    int sign = 1;
    int start = 0;
    int step = 1;
    int power = 1;
    int count = -1;
};

/// Expands constant * t^shift * prod(families) exactly below `order_half`.
/// Factors with nonpositive exponent are rewritten as a monomial times a
/// binomial in positive powers, so Laurent products come out exactly.
inline HalfLaurentSeries product_series(const std::vector<BinomialFamily> & families, int order_half,
                                        Rational constant = 1, int shift = 0)
{
    struct Factor {
        int sign, exp, power;
    };
    // Nonpositive exponents occur only in finitely many leading factors;
    // first_positive[i] is the index where family i turns positive.
    std::vector<Factor> finite;
    std::vector<int> first_positive(families.size(), 0);
    for (std::size_t i = 0; i < families.size(); ++i) {
        const auto & fam = families[i];
        require(fam.sign == 1 || fam.sign == -1, "product_series: sign must be +-1");
        require(fam.power == 1 || fam.power == -1, "product_series: power must be +-1");
        require(fam.step >= 1 || fam.count >= 0, "product_series: infinite family needs step >= 1");
        int j = 0;
        for (; (fam.count < 0 || j < fam.count) && fam.start + j * fam.step <= 0; ++j)
            finite.push_back({fam.sign, fam.start + j * fam.step, fam.power});
        first_positive[i] = j;
    }

    // 1 + s t^e with e < 0 equals s t^e (1 + s t^-e).
    std::vector<Factor> binomials;
    for (const auto & f : finite) {
        if (f.exp == 0) {
            const int value = 1 + f.sign;
            if (value == 0) {
                if (f.power < 0)
                    throw precondition_error("product_series: division by a zero factor");
                constant = 0;
            } else {
                constant = f.power > 0 ? Rational(constant * value) : Rational(constant / value);
            }
            continue;
        }
        constant *= f.sign;
        shift += f.power * f.exp;
        binomials.push_back({f.sign, -f.exp, f.power});
    }

    const int work = order_half - shift;
    if (work <= 0 || is_zero(constant))
        return HalfLaurentSeries::zero(order_half);

    std::vector<Rational> c(static_cast<std::size_t>(work));
    c[0] = constant;
    // In place: multiplication runs downward, division upward.
    auto apply = [&](int sign, int e, int power) {
        if (e >= work)
            return;
        const bool subtract = (power > 0) != (sign > 0);
        if (power > 0) {
            for (int i = work - 1; i >= e; --i)
                if (!is_zero(c[i - e]))
                    subtract ? c[i] -= c[i - e] : c[i] += c[i - e];
        } else {
            for (int i = e; i < work; ++i)
                if (!is_zero(c[i - e]))
                    subtract ? c[i] -= c[i - e] : c[i] += c[i - e];
        }
    };
    for (const auto & b : binomials)
        apply(b.sign, b.exp, b.power);
    for (std::size_t i = 0; i < families.size(); ++i) {
        const auto & fam = families[i];
        for (int j = first_positive[i]; fam.count < 0 || j < fam.count; ++j) {
            const int e = fam.start + j * fam.step;
            if (e >= work)
                break;
            apply(fam.sign, e, fam.power);
        }
    }
    return HalfLaurentSeries(shift, std::move(c));
}

/// (sign q^a; q^step)_inf = prod_{n>=0} (1 - sign q^(a + n step)), exponents in q.
inline BinomialFamily pochhammer_family(int sign, int a, int step, int power = 1)
{
    return {-sign, 2 * a, 2 * step, power, -1};
}

struct Theta3 {};
struct Phi {};
struct Psi {};
struct FNeg {};
/// (sign q^a; q^step)_inf.
struct Pochhammer {
    int sign = 1;
    int a = 1;
    int step = 1;
};
/// Sum over n in Z of (+-1)^n q^(k n^2 + h n).
struct General {
    int k = 1;
    int h = 0;
    bool alternating = false;
};
/// Sum of q^(t_m(n)), t_m(n) = (n^2 + m n)/2, over n in Z or over n >= 0.
struct Triangular {
    int m = 0;
    bool nonneg = false;
};
/// prod_{n>=0} (1 - q^(2n+2)) (1 + q^(2n+1-z)) (1 + q^(2n+1+z)).
struct TripleProductRhs {
    int z = 0;
};

using ThetaKind = std::variant<Theta3, Phi, Psi, FNeg, Pochhammer, General, Triangular, TripleProductRhs>;

inline std::string kind_name(const ThetaKind & kind)
{
    struct {
        std::string operator()(const Theta3 &) const { return "theta3"; }
        std::string operator()(const Phi &) const { return "phi"; }
        std::string operator()(const Psi &) const { return "psi"; }
        std::string operator()(const FNeg &) const { return "fneg"; }
        std::string operator()(const Pochhammer & p) const
        {
            return "pochhammer(" + std::to_string(p.sign) + "," + std::to_string(p.a) + "," +
                   std::to_string(p.step) + ")";
        }
        std::string operator()(const General & g) const
        {
            return std::string(g.alternating ? "general_alt(" : "general(") + std::to_string(g.k) + "," +
                   std::to_string(g.h) + ")";
        }
        std::string operator()(const Triangular & t) const
        {
            return std::string(t.nonneg ? "triangular_nonneg(" : "triangular(") + std::to_string(t.m) + ")";
        }
        std::string operator()(const TripleProductRhs & t) const
        {
            return "triple_product_rhs(" + std::to_string(t.z) + ")";
        }
    } visitor;
    return std::visit(visitor, kind);
}

/// Exact series of `kind` with every exponent below q^order. Sum-form kinds
/// are summed over the lattice, product-form kinds expanded as products.
inline HalfLaurentSeries series(const ThetaKind & kind, int order)
{
    require(order >= 1, "theta series: order must be at least 1");
    const int oh = 2 * order;
    struct {
        int oh;
        HalfLaurentSeries operator()(const Theta3 &) const { return lattice_sum_half(2, 0, oh); }
        HalfLaurentSeries operator()(const Phi &) const { return lattice_sum_half(2, 0, oh); }
        HalfLaurentSeries operator()(const Psi &) const { return lattice_sum_half(1, 1, oh, false, true); }
        HalfLaurentSeries operator()(const FNeg &) const { return lattice_sum_half(3, -1, oh, true); }
        HalfLaurentSeries operator()(const Pochhammer & p) const
        {
            require(p.sign == 1 || p.sign == -1, "pochhammer: sign must be +-1");
            require(p.a >= 0 && p.step >= 1, "pochhammer: needs a >= 0 and step >= 1");
            return product_series({pochhammer_family(p.sign, p.a, p.step)}, oh);
        }
        HalfLaurentSeries operator()(const General & g) const
        {
            require(g.k >= 1, "general theta: k must be positive");
            return lattice_sum_half(2 * g.k, 2 * g.h, oh, g.alternating);
        }
        HalfLaurentSeries operator()(const Triangular & t) const
        {
            require(t.m >= 0, "triangular theta: m must be nonnegative");
            return lattice_sum_half(1, t.m, oh, false, t.nonneg);
        }
        HalfLaurentSeries operator()(const TripleProductRhs & t) const
        {
            return product_series({{-1, 4, 4, 1, -1}, {1, 2 - 2 * t.z, 4, 1, -1}, {1, 2 + 2 * t.z, 4, 1, -1}},
                                  oh);
        }
    } visitor{oh};
    return std::visit(visitor, kind);
}

/// exp(-sum_{n>=1} (-1)^n f_kh(n) q^n), which reproduces sum q^(k n^2 + h n)
/// when k > |h| > 0 and k + h is odd.
inline HalfLaurentSeries general_theta_via_exp(int k, int h, int order)
{
    require(order >= 1, "general_theta_via_exp: order must be at least 1");
    require(h != 0 && k > std::abs(h), "general_theta_via_exp: requires k > |h| > 0");
    require((k + h) % 2 != 0, "general_theta_via_exp: k and h must have opposite parity");
    std::vector<Rational> a(static_cast<std::size_t>(2 * order));
    for (int n = 1; 2 * n < 2 * order; ++n) {
        const Rational f = arith::f_kh(k, h, n);
        a[static_cast<std::size_t>(2 * n)] = (n % 2 == 0) ? f : Rational(-f);
    }
    return qseries::exp_neg(HalfLaurentSeries(0, std::move(a)));
}

/// Products with exponents in q, shorthand for the identities below.
namespace products {

inline HalfLaurentSeries phi(int order)
{
    // (-q;q^2)(q^2;q^2) / ((q;q^2)(-q^2;q^2))
    return product_series({pochhammer_family(-1, 1, 2), pochhammer_family(1, 2, 2),
                           pochhammer_family(1, 1, 2, -1), pochhammer_family(-1, 2, 2, -1)},
                          2 * order);
}

inline HalfLaurentSeries psi(int order)
{
    return product_series({pochhammer_family(1, 2, 2), pochhammer_family(1, 1, 2, -1)}, 2 * order);
}

inline HalfLaurentSeries f_neg(int order) { return product_series({pochhammer_family(1, 1, 1)}, 2 * order); }

/// f(-q^2)^2 / f(-q).
inline HalfLaurentSeries psi_via_f(int order)
{
    return product_series({pochhammer_family(1, 2, 2), pochhammer_family(1, 2, 2), pochhammer_family(1, 1, 1, -1)},
                          2 * order);
}

/// (q;q^2)_inf (-q;q)_inf.
inline HalfLaurentSeries euler_unit(int order)
{
    return product_series({pochhammer_family(1, 1, 2), pochhammer_family(-1, 1, 1)}, 2 * order);
}

} // namespace products

/// For z = 2p+1: sum q^(n^2+zn) equals the triple product and equals
/// 2 q^(-p(p+1)) f(-q^2) (-q^2;q^2)^2; sum q^(t_z(n)) equals 2 q^(-p(p+1)/2) psi(q),
/// with psi taken both as f(-q^2)^2/f(-q) and as the quotient of Pochhammer symbols.
inline bool triple_product_check(int p, int order)
{
    require(p >= 0, "triple_product_check: p must be nonnegative");
    require(order >= 4, "triple_product_check: order must be at least 4");
    const int z = 2 * p + 1;
    const int oh = 2 * order;
    const auto lhs = lattice_sum_half(2, 2 * z, oh);
    const auto jacobi = series(TripleProductRhs{z}, order);
    const auto closed = product_series({pochhammer_family(1, 2, 2), pochhammer_family(-1, 2, 2),
                                        pochhammer_family(-1, 2, 2)},
                                       oh, 2, -2 * p * (p + 1));
    if (!(lhs == jacobi) || !(lhs == closed))
        return false;

    const auto tri = series(Triangular{z}, order);
    const int s = -p * (p + 1);
    const auto via_f = product_series({pochhammer_family(1, 2, 2), pochhammer_family(1, 2, 2),
                                       pochhammer_family(1, 1, 1, -1)},
                                      oh, 2, s);
    const auto via_poch = product_series({pochhammer_family(1, 2, 2), pochhammer_family(1, 1, 2, -1)}, oh, 2, s);
    return tri == via_f && tri == via_poch;
}

/// sum q^(t_2p(n)) = q^(-p^2/2) phi(q^(1/2)) for any integer p.
inline bool even_shift_check(int p, int order)
{
    require(order >= 4, "even_shift_check: order must be at least 4");
    const auto lhs = lattice_sum_half(1, 2 * p, 2 * order);
    const auto phi_half = qseries::contract(products::phi(2 * order + p * p));
    const auto rhs = qseries::shift(phi_half, -p * p).truncated(2 * order);
    return lhs == rhs && lhs.order() == rhs.order();
}

} // namespace qrep::theta
