#include <random>

#include <gtest/gtest.h>

#include "qrep/arith.hpp"
#include "qrep/qseries.hpp"

using namespace qrep;
using namespace qrep::arith;

TEST(ArithDivisors, Examples)
{
    EXPECT_EQ(divisors(12), (std::vector<std::int64_t>{1, 2, 3, 4, 6, 12}));
    EXPECT_EQ(divisors(1), (std::vector<std::int64_t>{1}));
    EXPECT_EQ(divisors(97), (std::vector<std::int64_t>{1, 97}));
    EXPECT_EQ(divisors(36), (std::vector<std::int64_t>{1, 2, 3, 4, 6, 9, 12, 18, 36}));
}

TEST(ArithDivisors, RejectsNonPositive)
{
    EXPECT_THROW(divisors(0), precondition_error);
    EXPECT_THROW(divisors(-6), precondition_error);
    EXPECT_THROW(divisor_sum(0, 1, DivisorFilter::all()), precondition_error);
}

TEST(ArithDivisorSum, Examples)
{
    EXPECT_EQ(divisor_sum(6, 1, DivisorFilter::all()), 12);
    EXPECT_EQ(divisor_sum(5, 0, DivisorFilter::odd_signed()), 2);
    EXPECT_EQ(divisor_sum(21, 0, DivisorFilter::residue(3, 4)), 2);
    EXPECT_EQ(divisor_sum(12, 1, DivisorFilter::odd()), 4);
    EXPECT_EQ(divisor_sum(3, 0, DivisorFilter::odd_signed()), 0);
    EXPECT_EQ(divisor_sum(25, 0, DivisorFilter::odd_signed()), 3);
}

TEST(ArithDivisorSum, ResidueFilterValidation)
{
    EXPECT_THROW(DivisorFilter::residue(4, 4), precondition_error);
    EXPECT_THROW(DivisorFilter::residue(-1, 4), precondition_error);
    EXPECT_THROW(DivisorFilter::residue(0, 0), precondition_error);
}

TEST(ArithDivisorSum, OverflowIsReported)
{
    EXPECT_THROW(divisor_sum(1000000007, 3, DivisorFilter::all()), std::overflow_error);
}

TEST(ArithDivisorSum, FourTimesSignedOddCountMatchesThetaSquared)
{
    constexpr int N = 2000;
    std::vector<std::pair<int, Rational>> terms;
    for (int n = 0; n * n <= N; ++n)
        terms.emplace_back(2 * n * n, n == 0 ? 1 : 2);
    const auto theta3 = HalfLaurentSeries::from_terms(terms, 2 * N + 2);
    const auto sq = qseries::square(theta3);
    for (int n = 1; n <= N; ++n)
        ASSERT_EQ(sq.coeff(2 * n), 4 * divisor_sum(n, 0, DivisorFilter::odd_signed())) << "n=" << n;
}

TEST(ArithChi0, ResidueCases)
{
    EXPECT_EQ(chi0(1), -2);
    EXPECT_EQ(chi0(2), 3);
    EXPECT_EQ(chi0(3), -2);
    EXPECT_EQ(chi0(4), 1);
    EXPECT_EQ(chi0(6), 3);
    EXPECT_THROW(chi0(0), precondition_error);
}

TEST(ArithChiKh, Examples)
{
    EXPECT_EQ(chi_kh(10, 1, 11), 1);
    EXPECT_EQ(chi_kh(10, 1, 3), 0);
    EXPECT_EQ(chi_kh(10, 1, 9), 1);
    for (int k = 1; k <= 6; ++k)
        EXPECT_EQ(chi_kh(k, 0, 2 * k), 1);
    EXPECT_THROW(chi_kh(0, 0, 1), precondition_error);
}

TEST(ArithChiKh, SymmetricInH)
{
    for (int k = 1; k <= 12; ++k)
        for (int h = -k + 1; h < k; ++h)
            for (int n = 1; n <= 100; ++n)
                ASSERT_EQ(chi_kh(k, h, n), chi_kh(k, -h, n));
}

TEST(ArithFkh, Examples)
{
    EXPECT_EQ(f_kh(2, 1, 1), 1);
    EXPECT_EQ(f_kh(2, 1, 4), make_rational(5, 4));
    EXPECT_EQ(f_kh(3, 2, 6), make_rational(7, 6));
    EXPECT_THROW(f_kh(2, 2, 1), precondition_error);
    EXPECT_THROW(f_kh(2, 1, 0), precondition_error);
}

TEST(ArithFkh, NumeratorIsNonnegativeInteger)
{
    const std::pair<int, int> kh[] = {{2, 1}, {3, 1}, {3, 2}, {5, 2}, {4, 0}};
    for (auto [k, h] : kh) {
        for (int n = 1; n <= 10000; n += (n < 200 ? 1 : 37)) {
            const Rational v = f_kh(k, h, n) * n;
            ASSERT_TRUE(is_integer(v));
            ASSERT_GE(v, 0);
        }
    }
}

TEST(ArithSigmaStar, Examples)
{
    EXPECT_EQ(sigma_star(2, 3), make_rational(4, 3));
    EXPECT_EQ(sigma_star(2, 2), make_rational(1, 2));
    EXPECT_EQ(sigma_star(3, 6), make_rational(3, 6));
    EXPECT_EQ(indicator_I(4, 8), 1);
    EXPECT_EQ(indicator_I(4, 6), 0);
    EXPECT_THROW(sigma_star(0, 1), precondition_error);
    EXPECT_THROW(indicator_I(1, 0), precondition_error);
}

TEST(ArithIndicator, Square)
{
    const auto S = IndicatorKind::square();
    EXPECT_EQ(indicator(S, std::int64_t{16}), 1);
    EXPECT_EQ(indicator(S, std::int64_t{0}), 1);
    EXPECT_EQ(indicator(S, std::int64_t{15}), 0);
    EXPECT_EQ(indicator(S, std::int64_t{-4}), 0);
    EXPECT_EQ(indicator(S, make_rational(7, 3)), 0);
    EXPECT_EQ(indicator(S, make_rational(18, 2)), 1);
}

TEST(ArithIndicator, Power)
{
    const auto P3 = IndicatorKind::power(3);
    EXPECT_EQ(indicator(P3, std::int64_t{0}), 1);
    EXPECT_EQ(indicator(P3, std::int64_t{1}), 1);
    EXPECT_EQ(indicator(P3, std::int64_t{1000}), 1);
    EXPECT_EQ(indicator(P3, std::int64_t{999}), 0);
    EXPECT_EQ(indicator(P3, std::int64_t{-8}), 0);
    EXPECT_THROW(IndicatorKind::power(1), precondition_error);
}

TEST(ArithIndicator, PolynomialValue)
{
    // A(m) = m^2 + m: twice the triangular numbers.
    const auto G = IndicatorKind::polyvalue({0, 1, 1});
    EXPECT_EQ(indicator(G, std::int64_t{0}), 1);
    EXPECT_EQ(indicator(G, std::int64_t{2}), 1);
    EXPECT_EQ(indicator(G, std::int64_t{6}), 1);
    EXPECT_EQ(indicator(G, std::int64_t{4}), 0);
    EXPECT_EQ(indicator(G, make_rational(1, 2)), 0);
    EXPECT_THROW(IndicatorKind::polyvalue({1}), precondition_error);
    EXPECT_THROW(IndicatorKind::polyvalue({0, -1, 2}), precondition_error);
}

TEST(ArithIndicator, TableMatchesPointwise)
{
    const IndicatorKind kinds[] = {IndicatorKind::square(), IndicatorKind::power(3), IndicatorKind::power(5),
                                   IndicatorKind::polyvalue({1, 2, 3})};
    for (const auto & kind : kinds) {
        const auto table = indicator_table(kind, 500);
        for (std::int64_t t = 0; t <= 500; ++t)
            ASSERT_EQ(table[static_cast<std::size_t>(t)], indicator(kind, t)) << t;
    }
}

TEST(ArithClassNumber, Examples)
{
    EXPECT_EQ(class_number(-3), 1);
    EXPECT_EQ(class_number(-4), 1);
    EXPECT_EQ(class_number(-20), 2);
    EXPECT_EQ(class_number(-23), 3);
    EXPECT_EQ(class_number(-19), 1);
    EXPECT_EQ(class_number(-56), 4);
    EXPECT_EQ(class_number(-163), 1);
}

TEST(ArithClassNumber, RejectsInvalidDiscriminant)
{
    EXPECT_THROW(class_number(0), precondition_error);
    EXPECT_THROW(class_number(5), precondition_error);
    EXPECT_THROW(class_number(-5), precondition_error);
    EXPECT_THROW(class_number(-6), precondition_error);
}

TEST(ArithClassNumber, ReducedFormsAreReducedAndPrimitive)
{
    for (std::int64_t D = -3; D >= -4000; --D) {
        if (mod(D, 4) != 0 && mod(D, 4) != 1)
            continue;
        const auto forms = reduced_forms(D);
        ASSERT_GE(forms.size(), 1u) << D;
        for (const auto & f : forms) {
            ASSERT_EQ(f.discriminant(), D);
            ASSERT_LE(std::abs(f.b), f.a);
            ASSERT_LE(f.a, f.c);
            if (std::abs(f.b) == f.a || f.a == f.c) {
                ASSERT_GE(f.b, 0);
            }
            ASSERT_EQ(std::gcd(std::gcd(f.a, std::abs(f.b)), f.c), 1);
        }
    }
}

TEST(ArithClassNumber, RandomDiscriminantsMatchBruteForce)
{
    // Brute force: count reduced triples without the a <= sqrt(|D|/3) cut.
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<std::int64_t> pick(1, 150);
    for (int trial = 0; trial < 60; ++trial) {
        const std::int64_t D = -4 * pick(rng) + (trial % 2 == 0 ? 0 : 1);
        std::int64_t count = 0;
        for (std::int64_t a = 1; a <= -D; ++a)
            for (std::int64_t b = -a; b <= a; ++b)
                for (std::int64_t c = a; b * b - 4 * a * c >= D; ++c) {
                    if (b * b - 4 * a * c != D)
                        continue;
                    if (b == -a || (a == c && b < 0))
                        continue;
                    if (std::gcd(std::gcd(a, std::abs(b)), c) == 1)
                        ++count;
                }
        ASSERT_EQ(class_number(D), count) << D;
    }
}
