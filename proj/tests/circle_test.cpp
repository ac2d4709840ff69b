#include <cmath>
#include <cstdlib>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <gtest/gtest.h>

#include "qrep/circle.hpp"
#include "qrep/repcount.hpp"

using namespace qrep;
using namespace qrep::circle;

TEST(LatticeCount, Examples)
{
    EXPECT_EQ(lattice_count(0), 1);
    EXPECT_EQ(lattice_count(1), 5);
    EXPECT_EQ(lattice_count(2), 9);
    EXPECT_EQ(lattice_count(25), 81);
    EXPECT_EQ(lattice_count(25.999), 81);
    EXPECT_THROW(lattice_count(-1), precondition_error);
}

TEST(LatticeCount, MatchesBoxEnumeration)
{
    for (double x : {0.5, 3.7, 10.0, 48.9, 99.99, 250.0, 1000.5}) {
        std::int64_t brute = 0;
        for (int i = -40; i <= 40; ++i)
            for (int j = -40; j <= 40; ++j)
                brute += (i * i + j * j <= x);
        EXPECT_EQ(lattice_count(x), brute) << x;
    }
}

TEST(LatticeCount, JumpsAreR2)
{
    std::int64_t prev = lattice_count(0);
    for (std::int64_t n = 1; n <= 500; ++n) {
        const std::int64_t before = lattice_count(n - 0.5);
        const std::int64_t at = lattice_count(static_cast<double>(n));
        EXPECT_EQ(before, prev);
        EXPECT_EQ(at - before, repcount::r2(n)) << n;
        prev = at;
    }
}

TEST(LatticeCount, TableAgreesWithR2)
{
    const auto t = r2_table(2000);
    for (std::int64_t n = 0; n <= 2000; ++n)
        ASSERT_EQ(t[static_cast<std::size_t>(n)], repcount::r2(n)) << n;
}

TEST(C1, ExamplesAndDisplayConstants)
{
    EXPECT_EQ(c1(0), 1);
    EXPECT_EQ(c1(1), make_rational(3, 4));
    EXPECT_EQ(c1(2), make_rational(-15, 32));
    EXPECT_EQ(c1(3), make_rational(105, 128));
    EXPECT_EQ(abs(expansion_constant(0)), 2);
    EXPECT_EQ(abs(expansion_constant(1)), make_rational(3, 8));
    EXPECT_EQ(abs(expansion_constant(2)), make_rational(15, 256));
    EXPECT_EQ(abs(expansion_constant(3)), make_rational(105, 4096));
}

TEST(C1, MatchesHankelCoefficients)
{
    // c1(m) / 2^m = (4 - 1)(4 - 9)...(4 - (2m-1)^2) / (m! 8^m)
    for (int m = 0; m <= 12; ++m) {
        Rational a = 1;
        for (int j = 1; j <= m; ++j)
            a *= make_rational(4 - (2 * j - 1) * (2 * j - 1), 8 * j);
        Rational c = c1(m);
        for (int j = 0; j < m; ++j)
            c /= 2;
        EXPECT_EQ(abs(c), abs(a)) << m;
    }
}

TEST(BesselJ1, Examples)
{
    EXPECT_EQ(bessel_j1(0), 0.0);
    EXPECT_NEAR(bessel_j1(1), 0.44005058574493352, 1e-15);
    EXPECT_LT(std::fabs(bessel_j1(20) - bessel_j1(20, BesselMethod::asymptotic, 3)), 1e-8);
    EXPECT_THROW(bessel_j1(0, BesselMethod::asymptotic), precondition_error);
    EXPECT_THROW(bessel_j1(-1), precondition_error);
}

TEST(BesselJ1, SeriesMatchesStandardLibrary)
{
    for (double x = 0; x <= 200; x += 0.73)
        EXPECT_NEAR(bessel_j1(x), std::cyl_bessel_j(1.0, x), 1e-13) << x;
}

TEST(BesselJ1, SeriesVersusAsymptoticOnRange)
{
    for (double x = 15; x <= 200; x += 0.5)
        EXPECT_LT(std::fabs(bessel_j1(x) - bessel_j1(x, BesselMethod::asymptotic, 3)), 1e-8) << x;
}

TEST(BesselJ1, AsymptoticErrorWithinFirstOmittedTerm)
{
    for (int N = 0; N <= 4; ++N)
        for (double x : {10.0, 15.0, 30.0, 80.0}) {
            const double err = std::fabs(bessel_j1(x) - bessel_j1_asymptotic(x, N));
            EXPECT_LE(err, bessel_j1_asymptotic_error(x, N) + 1e-15) << N << " " << x;
        }
}

TEST(HardySum, Examples)
{
    EXPECT_NEAR(hardy_sum(2.5), 9.0, 0.3);
    EXPECT_NEAR(hardy_sum(0.5), 1.0, 0.3);
    EXPECT_NEAR(hardy_sum(10.5), 37.0, 0.3);
    EXPECT_THROW(hardy_sum(3.0), precondition_error);
}

TEST(HardySum, SmoothingWindowsOnGrid)
{
    // Both truncations stay close on a 10-point grid; repeated wide averaging
    // is far closer still.
    double e1 = 0, e64 = 0, smooth = 0;
    for (int j = 0; j < 10; ++j) {
        const double x = 0.5 + j;
        const double exact = static_cast<double>(lattice_count(x));
        e1 += std::fabs(hardy_sum(x, {100000, 1, 1, 1}) - exact);
        e64 += std::fabs(hardy_sum(x, {100000, 1, 64, 1}) - exact);
        smooth += std::fabs(hardy_sum(x, {100000, 1, 30000, 3}) - exact);
    }
    EXPECT_LT(e1 / 10, 0.1);
    EXPECT_LT(e64 / 10, 0.1);
    EXPECT_LT(smooth / 10, 1e-5);
}

TEST(Oscillatory, Examples)
{
    const TruncationSpec spec{2000, 20001, 64, 1};
    EXPECT_NEAR(oscillatory_sum(Oscillatory::M, 1, 0, 0, spec), -pi / 4, 1e-6);
    const double catalan = 0.91596559417721901;
    EXPECT_NEAR(oscillatory_sum(Oscillatory::N, 2, pi / 2, 0, spec), -catalan, 1e-9);
    EXPECT_NEAR(oscillatory_sum(Oscillatory::M, 2, 0.3, 0, spec), -catalan * std::cos(0.3), 1e-9);
}

TEST(Oscillatory, ZeroFrequencyFactorsThroughZeta)
{
    // P_s(a, 0) = zeta(s) M_s(a, 0), Q_s(a, 0) = zeta(s) N_s(a, 0)
    const double zeta3 = 1.2020569031595943;
    const TruncationSpec spec{200000, 20001, 64, 1};
    for (double a : {0.0, 0.7, 2.0}) {
        EXPECT_NEAR(oscillatory_sum(Oscillatory::P, 3, a, 0, spec), zeta3 * oscillatory_sum(Oscillatory::M, 3, a, 0, spec),
                    1e-8);
        EXPECT_NEAR(oscillatory_sum(Oscillatory::Q, 3, a, 0, spec), zeta3 * oscillatory_sum(Oscillatory::N, 3, a, 0, spec),
                    1e-8);
    }
}

TEST(Oscillatory, GroupedOrderMatchesRectangleWhenAbsolute)
{
    // For s = 2 both orderings converge absolutely to the same value.
    const double a = 0.4, b = 1.7;
    double rect = 0;
    for (int n = 1; n <= 3000; ++n) {
        double inner = 0;
        for (int k = 1; k <= 6001; k += 2)
            inner += ((k + 1) / 2 % 2 == 0 ? 1.0 : -1.0) * std::cos(a + b * std::sqrt(double(n) * k)) / (double(k) * k);
        rect += inner / (double(n) * n);
    }
    EXPECT_NEAR(oscillatory_sum(Oscillatory::P, 2, a, b, {2000000, 1, 1, 1}), rect, 2e-3);
}

TEST(RExpansion, Examples)
{
    const double exact = static_cast<double>(lattice_count(25.3)) - 25.3 * pi;
    EXPECT_NEAR(R_expansion(25.3, 1), exact, 0.5);
    const double e100 = static_cast<double>(lattice_count(100.5)) - 100.5 * pi;
    EXPECT_LE(std::fabs(R_expansion(100.5, 1) - e100), std::fabs(R_expansion(100.5, 0) - e100) + 0.1);
    EXPECT_TRUE(std::isfinite(R_expansion(2.5, 1)));
    EXPECT_THROW(R_expansion(1.0, 1), precondition_error);
}

TEST(RExpansion, HigherOrderReducesAverageError)
{
    // 50 half-integers in [20, 200]; the truncation is smoothed hard enough
    // that the remaining error is dominated by the order of the expansion.
    const TruncationSpec spec{200000, 1, 66666, 3};
    double e0 = 0, e1 = 0;
    for (int k = 0; k < 50; ++k) {
        const double x = 20.5 + std::round(k * 179.0 / 49.0);
        const double exact = static_cast<double>(lattice_count(x)) - pi * x;
        e0 += std::fabs(R_expansion(x, 0, spec) - exact);
        e1 += std::fabs(R_expansion(x, 1, spec) - exact);
    }
    EXPECT_LT(e1, e0);
}

TEST(RExpansion, AgreesWithHardySum)
{
    for (double x : {30.5, 60.5}) {
        const double hardy = hardy_sum(x, {100000, 1, 30000, 3}) - pi * x;
        EXPECT_NEAR(R_expansion(x, 2, {100000, 1, 30000, 3}), hardy, 1e-3) << x;
    }
}

TEST(SSum, Examples)
{
    const double s1 = S_sum(2.5, {1000, 1000, 64, 1});
    const double s2 = S_sum(2.5, {2000, 2000, 64, 1});
    EXPECT_LT(std::fabs(s1 - s2), 0.1);
    EXPECT_TRUE(std::isfinite(S_sum(0.3)));
}

TEST(SSum, LeadingTermOfR)
{
    // R(x) ~ -(4 x^(1/4) / pi) S(x) up to the lower-order terms of the expansion.
    const double x = 50.5;
    const double exact = static_cast<double>(lattice_count(x)) - pi * x;
    const double lead = -4 * std::pow(x, 0.25) / pi * S_sum(x, {1500, 1500, 500, 2});
    EXPECT_NEAR(lead, exact, 0.3);
}

TEST(GSum, Examples)
{
    for (double x : {0.3, 1.0, 7.7})
        EXPECT_DOUBLE_EQ(G(0, x, 1), std::cos(2 * pi * std::sqrt(x) + pi / 4));
    double direct = 0;
    for (int n = 1; n <= 1000; ++n)
        direct += std::cos(2 * pi * std::sqrt(n * 2.2) + pi / 4) / std::pow(n, 0.75 - 0.1);
    EXPECT_NEAR(G(0.1, 2.2, 1000), direct, 1e-12);
    EXPECT_THROW(G(0.25, 1, 10), precondition_error);
    EXPECT_THROW(G(0, 1, 0), precondition_error);
}

TEST(GSum, SupStableOnGrid)
{
    for (double x : default_G_grid()) {
        const auto sums = G_partial_sums(0, x, std::int64_t{1} << 17);
        double sup16 = 0, sup17 = 0;
        for (std::size_t i = 0; i < sums.size(); ++i) {
            if (i < (std::size_t{1} << 16))
                sup16 = std::max(sup16, std::fabs(sums[i]));
            sup17 = std::max(sup17, std::fabs(sums[i]));
        }
        EXPECT_LT(sup17 - sup16, 0.1) << x;
        EXPECT_TRUE(std::isfinite(sup17));
    }
}

TEST(Fresnel, Examples)
{
    EXPECT_EQ(fresnel(0).C, 0.0);
    EXPECT_EQ(fresnel(0).S, 0.0);
    EXPECT_NEAR(fresnel(1).C, 0.77989340037682283, 1e-14);
    EXPECT_NEAR(fresnel(1).S, 0.43825914739035477, 1e-14);
    EXPECT_THROW(fresnel(-1), precondition_error);
}

TEST(Fresnel, MatchesAdaptiveQuadrature)
{
    using boost::math::quadrature::gauss_kronrod;
    for (double z : {0.1, 0.5, 1.2, 1.5, 1.50001, 1.8, 2.5, 4.0, 7.3, 12.0}) {
        // Split at the zeros of the integrand so each panel is smooth.
        double c = 0, s = 0, lo = 0;
        for (int k = 1; lo < z; ++k) {
            const double hi = std::min(z, std::sqrt(static_cast<double>(k)));
            c += gauss_kronrod<double, 61>::integrate([](double t) { return std::cos(pi * t * t / 2); }, lo, hi, 8, 1e-14);
            s += gauss_kronrod<double, 61>::integrate([](double t) { return std::sin(pi * t * t / 2); }, lo, hi, 8, 1e-14);
            lo = hi;
        }
        EXPECT_NEAR(fresnel(z).C, c, 1e-12) << z;
        EXPECT_NEAR(fresnel(z).S, s, 1e-12) << z;
    }
}

TEST(Fresnel, LimitsAndContinuity)
{
    EXPECT_NEAR(fresnel(1e4).C, 0.5, 1e-4);
    EXPECT_NEAR(fresnel(1e4).S, 0.5, 1e-4);
    // The slope is at most 1, so values 2e-12 apart differ by at most that much.
    const auto below = fresnel(1.5 - 1e-12), above = fresnel(1.5 + 1e-12);
    EXPECT_NEAR(below.C, above.C, 3e-12);
    EXPECT_NEAR(below.S, above.S, 3e-12);
    // Reference values computed with 30-digit arithmetic.
    EXPECT_NEAR(fresnel(1.5).C, 0.44526117603982154, 1e-14);
    EXPECT_NEAR(fresnel(2.0).C, 0.48825340607534075, 1e-13);
    EXPECT_NEAR(fresnel(2.0).S, 0.34341567836369824, 1e-13);
    EXPECT_NEAR(fresnel(3.0).C, 0.60572078929768563, 1e-13);
    EXPECT_NEAR(fresnel(3.0).S, 0.49631299896737504, 1e-13);
}

TEST(FresnelClosedSum, EnvelopeOverSchedule)
{
    for (double a : {1.0, 2.0, 3.0}) {
        const auto g = G_partial_sums(0, a, 100000);
        double worst = 0;
        auto check = [&](std::int64_t M) {
            const double diff = std::fabs(g[static_cast<std::size_t>(M - 1)] - fresnel_closed_sum(a, M));
            worst = std::max(worst, diff);
            EXPECT_LE(diff, fresnel_envelope(a)) << a << " " << M;
        };
        for (std::int64_t M = 1; M <= 1000; ++M)
            check(M);
        for (std::int64_t M = 1024; M <= 100000; M *= 2)
            check(M);
        check(100000);
        EXPECT_TRUE(std::isfinite(worst));
    }
}

TEST(FresnelClosedSum, DifferenceDoesNotGrow)
{
    const double a = 2;
    const auto g = G_partial_sums(0, a, 100000);
    double upto4 = 0, upto5 = 0;
    for (std::int64_t M = 1; M <= 100000; ++M) {
        const double diff = std::fabs(g[static_cast<std::size_t>(M - 1)] - fresnel_closed_sum(a, M));
        if (M <= 10000)
            upto4 = std::max(upto4, diff);
        upto5 = std::max(upto5, diff);
    }
    EXPECT_LT(upto5 - upto4, 0.1);
}

TEST(EulerMaclaurin, FourthDerivativeMatchesFiniteDifferences)
{
    for (double a : {0.5, 1.0, 2.0})
        for (double t : {1.5, 3.0, 10.0, 40.0}) {
            const double h = 0.02;
            const double fd = (em::F(a, t - 2 * h) - 4 * em::F(a, t - h) + 6 * em::F(a, t) - 4 * em::F(a, t + h) +
                               em::F(a, t + 2 * h)) /
                              std::pow(h, 4);
            EXPECT_NEAR(em::d4F(a, t), fd, 2e-3 * em::d4F_majorant(a, t)) << a << " " << t;
            EXPECT_LE(std::fabs(em::d4F(a, t)), em::d4F_majorant(a, t));
        }
}

TEST(EulerMaclaurin, FirstDerivativeMatchesCentralDifference)
{
    for (double t : {1.0, 2.5, 9.0}) {
        const double h = 1e-5;
        EXPECT_NEAR(em::dF(1.3, t), (em::F(1.3, t + h) - em::F(1.3, t - h)) / (2 * h), 1e-7);
    }
}

TEST(EulerMaclaurin, ConstantFunctionHasNoResidual)
{
    const double r = euler_maclaurin_residual([](double) { return 3.0; }, [](double) { return 0.0; },
                                              [](double lo, double hi) { return 3.0 * (hi - lo); }, 50);
    EXPECT_NEAR(r, 0.0, 1e-12);
}

TEST(EulerMaclaurin, ResidualWithinBoundOnGrid)
{
    for (double a : {0.5, 1.0, 2.0})
        for (std::int64_t M : {10, 100, 1000}) {
            const auto em = euler_maclaurin(a, M);
            EXPECT_LE(em.residual, em.bound) << a << " " << M;
        }
    const auto one = euler_maclaurin(1, 100);
    EXPECT_LE(one.residual, one.bound);
    EXPECT_NEAR(one.residual, euler_maclaurin_residual(1, 100), 0);
    EXPECT_THROW(euler_maclaurin(0, 10), precondition_error);
}

TEST(ScanR, RowAt25)
{
    const auto res = scan_R(30, 0.5, 0.1, {{}, 1024, true});
    ASSERT_EQ(res.rows.size(), 60u);
    const auto & row = res.rows[49];
    EXPECT_EQ(row.x, 25.0);
    EXPECT_EQ(row.count, 81);
    EXPECT_NEAR(row.R, 2.4601836602551685, 1e-12);
    EXPECT_DOUBLE_EQ(row.Rscaled, row.R / std::pow(25.0, 0.25));
    EXPECT_DOUBLE_EQ(row.pix, 25 * pi);
}

TEST(ScanR, RowsMatchIndependentCounter)
{
    const auto res = scan_R(400, 0.37, 0.1, {{}, 256, true});
    for (const auto & row : res.rows) {
        ASSERT_EQ(row.count, lattice_count(row.x)) << row.x;
        EXPECT_EQ(row.R, static_cast<double>(row.count) - row.pix);
    }
}

TEST(ScanR, DeterministicAcrossThreadCounts)
{
    setenv("QREP_THREADS", "1", 1);
    const auto a = scan_R(5000, 0.25, 0.1, {{}, 4096, true});
    setenv("QREP_THREADS", "4", 1);
    const auto b = scan_R(5000, 0.25, 0.1, {{}, 4096, true});
    unsetenv("QREP_THREADS");
    ASSERT_EQ(a.rows.size(), b.rows.size());
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        EXPECT_EQ(a.rows[i].count, b.rows[i].count);
        EXPECT_EQ(a.rows[i].Rscaled, b.rows[i].Rscaled);
    }
    EXPECT_EQ(a.summary.sup_abs_Rscaled, b.summary.sup_abs_Rscaled);
    EXPECT_EQ(a.summary.sup_G, b.summary.sup_G);
}

TEST(ScanR, SupScaledErrorToMillion)
{
    // The extreme sits in the gap before the jump at x = 574561, where R / x^(1/4)
    // reaches about -7.339; frozen as a regression value.
    const auto res = scan_R(1e6, 0.5, 0.1, {{}, 1 << 12, false});
    EXPECT_EQ(res.summary.rows, 2000000);
    EXPECT_NEAR(res.summary.sup_abs_Rscaled, 7.33865, 1e-5);
    EXPECT_EQ(res.summary.x_at_sup, 574560.5);
    EXPECT_TRUE(std::isfinite(res.summary.sup_G));
}

TEST(ScanR, Preconditions)
{
    EXPECT_THROW(scan_R(0.5, 0.1), precondition_error);
    EXPECT_THROW(scan_R(10, 0), precondition_error);
    EXPECT_THROW(scan_R(10, 1, 0.25), precondition_error);
}
