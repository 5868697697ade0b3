#include <dqsvt/polynomial.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <random>

namespace dqsvt {
namespace {

double naive_even(std::span<const double> a, double x) {
    double sum = 0.0;
    for (std::size_t r = 0; r < a.size(); ++r) sum += a[r] * std::pow(x, 2.0 * static_cast<double>(r));
    return sum;
}

// T_n(x) = cos(n arccos x), valid on [-1, 1].
double cheb_t(int n, double x) { return std::cos(n * std::acos(std::clamp(x, -1.0, 1.0))); }

TEST(EvenPolynomialEval, Constant) {
    EXPECT_EQ(eval(EvenPolynomial::monomial({1.0}), 0.7), 1.0);
    EXPECT_EQ(eval(EvenPolynomial(), -0.3), 1.0);
}

TEST(EvenPolynomialEval, Square) {
    EXPECT_DOUBLE_EQ(eval(EvenPolynomial::monomial({0.0, 1.0}), -0.5), 0.25);
}

TEST(EvenPolynomialEval, MatchesTermByTermSummation) {
    Rng rng(1);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> a(5);
        for (auto& c : a) c = u(rng);
        const auto p = EvenPolynomial::monomial(a);
        for (int k = 0; k < 100; ++k) {
            const double x = u(rng);
            const double ref = naive_even(a, x);
            double scale = 0.0;
            for (std::size_t r = 0; r < a.size(); ++r) scale += std::abs(a[r]) * std::pow(x, 2.0 * static_cast<double>(r));
            EXPECT_LE(std::abs(p(x) - ref), 1e-13 * std::max(scale, 1e-300));
        }
    }
}

TEST(EvenPolynomialEval, ChebyshevBasisMatchesTrigonometricDefinition) {
    Rng rng(2);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> c(12);
    for (auto& x : c) x = u(rng);
    const auto p = EvenPolynomial::chebyshev(c);
    for (int k = 0; k < 200; ++k) {
        const double x = u(rng);
        double ref = 0.0;
        for (std::size_t j = 0; j < c.size(); ++j) ref += c[j] * cheb_t(2 * static_cast<int>(j), x);
        EXPECT_NEAR(p(x), ref, 1e-12);
    }
}

TEST(EvenPolynomialEval, EvennessIsExact) {
    Rng rng(3);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> c(30);
    for (auto& x : c) x = u(rng);
    const auto cheb = EvenPolynomial::chebyshev(c);
    const auto mono = EvenPolynomial::monomial(std::vector<double>(c.begin(), c.begin() + 8));
    for (int k = 0; k < 1000; ++k) {
        const double x = u(rng);
        EXPECT_EQ(cheb(x), cheb(-x));
        EXPECT_EQ(mono(x), mono(-x));
    }
}

TEST(EvenPolynomialBasis, RoundTripBetweenBases) {
    Rng rng(4);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> a(7);
    for (auto& x : a) x = u(rng);
    const auto mono = EvenPolynomial::monomial(a);
    const auto cheb = mono.to_chebyshev();
    EXPECT_EQ(cheb.basis(), EvenPolynomial::Basis::kChebyshev);
    const auto back = cheb.to_monomial();
    ASSERT_EQ(back.half_degree(), mono.half_degree());
    for (int r = 0; r <= mono.half_degree(); ++r) EXPECT_NEAR(back.coefficients()[r], a[r], 1e-11);
    for (double x = -1.0; x <= 1.0; x += 0.01) EXPECT_NEAR(cheb(x), mono(x), 1e-12);
}

TEST(EvenPolynomialBasis, HighDegreeConversionWarns) {
    std::vector<double> c(20, 0.0);
    c.back() = 1.0;
    std::vector<std::string> warnings;
    (void)EvenPolynomial::chebyshev(c).to_monomial(&warnings);
    EXPECT_FALSE(warnings.empty());
    warnings.clear();
    (void)EvenPolynomial::chebyshev({0.0, 1.0}).to_monomial(&warnings);
    EXPECT_TRUE(warnings.empty());
}

TEST(ChebyshevInterpolate, ExactForPolynomials) {
    const auto c = chebyshev_interpolate([](double x) { return 4 * x * x * x - 3 * x + 0.5; }, 5);
    ASSERT_EQ(c.size(), 6u);
    EXPECT_NEAR(c[0], 0.5, 1e-14);
    EXPECT_NEAR(c[3], 1.0, 1e-14);
    for (int k : {1, 2, 4, 5}) EXPECT_NEAR(c[k], 0.0, 1e-14);
    EXPECT_NEAR(chebyshev_eval(c, 0.3), 4 * 0.027 - 0.9 + 0.5, 1e-14);
}

TEST(SignApprox, BoxesHoldOnFineGrid) {
    const auto p = build_sign_approx(0.5, 0.1);
    const auto report = check_sign_boxes(p, 0.5, 0.1, 10000);
    EXPECT_TRUE(report.pass());
    // Independent grid scan.
    for (int i = 0; i <= 10000; ++i) {
        const double x = -2.0 + 4.0 * i / 10000.0;
        const double y = p(x);
        EXPECT_LE(std::abs(y), 1.0 + 1e-9);
        if (x >= 0.5) EXPECT_GE(y, 0.9 - 1e-9);
        if (x <= -0.5) EXPECT_LE(y, -0.9 + 1e-9);
    }
}

TEST(SignApprox, OddAndZeroAtOrigin) {
    const auto p = build_sign_approx(0.3, 0.05);
    EXPECT_EQ(p(0.0), 0.0);
    for (double x = 0.01; x < 2.0; x += 0.037) EXPECT_EQ(p(-x), -p(x));
}

TEST(SignApprox, DegreeWithinLogOverEtaBound) {
    // Measured constant for the erf-based ladder; holds across this grid.
    constexpr double kC = 4.0;
    for (double eta : {0.5, 0.25, 0.1, 0.05}) {
        for (double xi : {0.1, 0.01, 0.001}) {
            const auto p = build_sign_approx(eta, xi);
            EXPECT_LE(p.degree(), kC * std::log(1.0 / xi) / eta + 12) << "eta=" << eta << " xi=" << xi;
        }
    }
    const auto p = build_sign_approx(0.25, 0.01);
    EXPECT_LE(p.degree(), kC * std::log(100.0) / 0.25 + 12);
}

TEST(SignApprox, RejectsBadParameters) {
    EXPECT_THROW((void)build_sign_approx(0.0, 0.1), InvalidInput);
    EXPECT_THROW((void)build_sign_approx(0.1, 0.5), InvalidInput);
    EXPECT_THROW((void)build_sign_approx(0.1, 0.0), InvalidInput);
}

const ThresholdSpec kReference{0.5, 0.7, 0.1, 0.1, 0.01};

TEST(Threshold, ReferenceSpecPassesBoxes) {
    const auto p = build_threshold(kReference);
    EXPECT_TRUE(verify_threshold(p, kReference, 10000).pass());
    for (int i = 0; i <= 10000; ++i) {
        const double x = i / 10000.0;
        const double y = p(x);
        EXPECT_LE(std::abs(y), 1.0 + 1e-9);
        if (x >= 0.5 && x <= 0.7) EXPECT_GE(y, 0.99 - 1e-9);
        if (x <= 0.4 || x >= 0.8) {
            EXPECT_GE(y, -1e-9);
            EXPECT_LE(y, 0.01 + 1e-9);
        }
    }
}

TEST(Threshold, MidpointAndOrigin) {
    const auto p = build_threshold(kReference);
    EXPECT_GE(p(0.6), 1.0 - 0.01);
    EXPECT_GE(p(0.0), 0.0);
    EXPECT_LE(p(0.0), 0.01);
}

TEST(Threshold, IntermediateQBounds) {
    for (const ThresholdSpec& spec : {kReference, ThresholdSpec{0.3, 0.45, 0.05, 0.2, 0.05}}) {
        const auto c = build_threshold_construction(spec);
        const double xi = c.xi;
        for (int i = 0; i <= 10000; ++i) {
            const double x = i / 10000.0;
            const double q = c.q(x);
            if (x >= spec.t1 && x <= spec.t2) {
                EXPECT_GE(q, 1.0 - xi - 1e-9);
                EXPECT_LE(q, 1.0 + 1e-9);
            }
            if (x <= spec.t1 - spec.theta1 || x >= spec.t2 + spec.theta2) {
                EXPECT_GE(q, -1e-9);
                EXPECT_LE(q, 1.5 * xi + 1e-9);
            }
        }
    }
}

TEST(Threshold, SupNormOnFullInterval) {
    for (const ThresholdSpec& spec :
         {kReference, ThresholdSpec{0.2, 0.4, 0.1, 0.05, 0.02}, ThresholdSpec{0.6, 0.9, 0.2, 0.1, 0.1}}) {
        const auto p = build_threshold(spec);
        for (int i = 0; i <= 20000; ++i) {
            const double x = -1.0 + 2.0 * i / 20000.0;
            EXPECT_LE(std::abs(p(x)), 1.0 + 1e-9);
        }
    }
}

TEST(Threshold, DegreeNonincreasingInChi) {
    for (const auto& [theta1, theta2] : {std::pair{0.1, 0.1}, std::pair{0.05, 0.2}}) {
        int previous = std::numeric_limits<int>::max();
        for (double chi : {0.005, 0.01, 0.03, 0.1, 0.2}) {
            const auto p = build_threshold({0.4, 0.6, theta1, theta2, chi});
            EXPECT_LE(p.degree(), previous) << "chi=" << chi;
            previous = p.degree();
        }
    }
}

TEST(Threshold, DegreeWithinMeasuredConstant) {
    const auto p = build_threshold(kReference);
    const double scale = (1 / 0.1 + 1 / 0.1) * std::log(1 / 0.01);
    EXPECT_LE(p.degree(), kThresholdDegreeConstant * scale);
}

TEST(Threshold, EqualEndpointsAllowed) {
    const ThresholdSpec spec{0.5, 0.5, 0.5, 0.125, 0.12};
    EXPECT_TRUE(verify_threshold(build_threshold(spec), spec).pass());
}

TEST(Threshold, RejectsBadSpecs) {
    EXPECT_THROW((void)build_threshold({0.05, 0.7, 0.1, 0.1, 0.01}), InvalidInput);
    EXPECT_THROW((void)build_threshold({0.5, 0.95, 0.1, 0.1, 0.01}), InvalidInput);
    EXPECT_THROW((void)build_threshold({0.5, 0.4, 0.1, 0.1, 0.01}), InvalidInput);
    EXPECT_THROW((void)build_threshold({0.5, 0.7, 0.1, 0.1, 1.0}), InvalidInput);
    EXPECT_THROW((void)build_threshold({0.5, 0.7, 0.0, 0.1, 0.1}), InvalidInput);
}

TEST(VerifyThreshold, ZeroFailsInnerRegion) {
    const auto report = verify_threshold(EvenPolynomial::monomial({0.0}), kReference);
    EXPECT_FALSE(report.pass());
    EXPECT_NEAR(report.inner_violation, 0.99, 1e-12);
    EXPECT_EQ(report.outer_violation, 0.0);
    EXPECT_EQ(report.failing_region(), "inner [t1,t2]");
}

TEST(VerifyThreshold, ConstantOneFailsOuterRegion) {
    const auto report = verify_threshold(EvenPolynomial(), kReference);
    EXPECT_FALSE(report.pass());
    EXPECT_NEAR(report.outer_violation, 0.99, 1e-12);
    EXPECT_EQ(report.failing_region(), "outer [0,t1-theta1]u[t2+theta2,1]");
}

TEST(VerifyThreshold, SupViolationReported) {
    const auto report = verify_threshold(EvenPolynomial::monomial({0.0, 0.0, 0.0, 2.0}), {0.5, 0.7, 0.1, 0.1, 0.5});
    EXPECT_GT(report.sup_excess, 0.9);
    EXPECT_FALSE(report.pass());
}

TEST(VerifyThreshold, SmallGridRejected) {
    EXPECT_THROW((void)verify_threshold(EvenPolynomial(), kReference, 999), InvalidInput);
}

}  // namespace
}  // namespace dqsvt
