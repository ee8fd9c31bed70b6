#include <gtest/gtest.h>

#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <vector>

#include "mlbeta/mlf.hpp"
#include "mlbeta/quad.hpp"

using namespace mlbeta;
using ml::MittagLeffler;

namespace {

using big = boost::multiprecision::cpp_bin_float_50;

// Taylor series in 50-digit arithmetic
double series_oracle(double l, double b, double d, double x) {
    big s = 0, r = 1, pw = 1;
    for (int n = 0; n < 6000; ++n) {
        if (n > 0) {
            r *= (big(d) + (n - 1)) / n;
            pw *= big(x);
        }
        big t = r * pw / boost::math::tgamma(big(l) * n + big(b));
        s += t;
        if (n > 60 && abs(t) < big(1e-30) * abs(s) + big(1e-300)) break;
    }
    return static_cast<double>(s);
}

void expect_close(double v, double o, const std::string& what) {
    // relative 1e-10, absolute 1e-12 where the oscillating orders nearly cancel
    double tol = std::fabs(o) < 1e-8 ? 1e-12 : 1e-10 * std::fabs(o);
    EXPECT_LE(std::fabs(v - o), tol) << what << " value " << v << " oracle " << o;
}

}  // namespace

TEST(MittagLeffler, ClosedForms) {
    EXPECT_NEAR(ml::ml_one(1, 1), 2.718281828459045, 1e-15);
    EXPECT_NEAR(ml::ml_one(2, 1), 1.5430806348152437, 1e-15);
    EXPECT_NEAR(ml::ml_one(0.5, -1), std::exp(1.0) * std::erfc(1.0), 1e-15);
    EXPECT_NEAR(ml::ml_one(0.5, -1), 0.4275835761558070, 1e-15);
    EXPECT_NEAR(ml::ml_two(1, 2, 1), 1.718281828459045, 1e-15);
    EXPECT_NEAR(ml::ml_two(0.7, 1.3, 0), 1.0 / std::tgamma(1.3), 1e-15);
    EXPECT_NEAR(ml::ml_two(2, 2, 1), 1.1752011936438014, 1e-15);
    EXPECT_NEAR(ml::ml_prabhakar(0.9, 1.4, 2.0, 0), 1.0 / std::tgamma(1.4), 1e-15);
    EXPECT_EQ(ml::ml_prabhakar(0.7, 1.0, 1.0, -0.5), ml::ml_two(0.7, 1.0, -0.5));
}

TEST(MittagLeffler, HalfOrderAgainstErfc) {
    // E_{1/2}(-x) = exp(x^2) erfc(x)
    for (double x : {0.1, 0.7, 2.0, 4.5, 5.5, 9.0, 20.0}) {
        double o = std::exp(x * x) * std::erfc(x);
        EXPECT_NEAR(ml::ml_one(0.5, -x) / o, 1.0, 1e-10) << x;
    }
}

TEST(MittagLeffler, ValueAtZeroIsExact) {
    for (double l : {0.1, 0.5, 1.0, 1.5, 2.0}) EXPECT_EQ(ml::ml_one(l, 0.0), 1.0);
}

TEST(MittagLeffler, OrderOneIsExp) {
    for (double x = -50; x <= 50; x += 0.73) EXPECT_NEAR(ml::ml_one(1, x) / std::exp(x), 1.0, 1e-12) << x;
}

TEST(MittagLeffler, MonotoneDecayForOrderAtMostOne) {
    for (double l : {0.3, 0.6, 0.9, 1.0}) {
        double prev = ml::ml_one(l, -200.0);
        for (double x = -199.0; x <= 0.0; x += 1.0) {
            double v = ml::ml_one(l, x);
            EXPECT_LT(prev, v) << l << " " << x;
            EXPECT_GT(v, 0.0);
            EXPECT_LE(v, 1.0);
            prev = v;
        }
    }
}

TEST(MittagLeffler, PrabhakarWithUnitDeltaIsTwoParameter) {
    int count = 0;
    for (double l : {0.4, 0.9, 1.6})
        for (double b : {0.6, 1.3})
            for (double x : {-30.0, -6.0, -2.5, -0.3, 0.8, 3.0, 6.5, 9.0, 12.0}) {
                double a = ml::ml_prabhakar(l, b, 1.0, x), c = ml::ml_two(l, b, x);
                EXPECT_LE(std::fabs(a - c), 1e-12 * std::max(1.0, std::fabs(c)));
                ++count;
            }
    EXPECT_GE(count, 50);
}

TEST(MittagLeffler, AgainstMultiprecisionSeries) {
    const std::vector<double> lambdas{0.3, 0.7, 1.0, 1.3, 1.8, 2.0};
    const std::vector<double> betas{0.5, 1.0, 2.2};
    const std::vector<double> deltas{1.0, 2.3};
    const std::vector<double> xs{-60, -25, -9, -5.2, -4.9, -1.5, -0.2, 0.4, 3.0, 5.5, 9.0};
    for (double l : lambdas)
        for (double b : betas)
            for (double d : deltas)
                for (double x : xs) {
                    if (std::pow(std::fabs(x), 1.0 / l) > 60) continue;
                    if (l > 1 && d != 1 && x < -40) continue;  // outside the supported range
                    double v = MittagLeffler(l, b, d)(x);
                    expect_close(v, series_oracle(l, b, d, x),
                                 "l=" + std::to_string(l) + " b=" + std::to_string(b) + " d=" +
                                     std::to_string(d) + " x=" + std::to_string(x));
                }
}

TEST(MittagLeffler, PrabhakarThreeParameterPoint) {
    expect_close(ml::ml_prabhakar(0.8, 1.2, 1.5, -0.5), series_oracle(0.8, 1.2, 1.5, -0.5), "example");
}

TEST(MittagLeffler, LogKernelBeyondDoubleRange) {
    MittagLeffler E(0.7);
    // E(-y) ~ y^{-1} / Gamma(0.3) for huge y
    auto k = E.neg_log(900.0);
    EXPECT_EQ(k.sign, 1);
    EXPECT_NEAR(k.log_abs, -900.0 - std::log(std::tgamma(0.3)), 1e-12);
    EXPECT_NEAR(E.neg_log(std::log(30.0)).value(), E(-30.0), 1e-15);
}

TEST(MittagLeffler, MellinClosedForm) {
    EXPECT_NEAR(ml::ml_mellin_closed_form(0.5, 1, 1, 1, 1), 1.7724538509055159, 1e-15);
    EXPECT_NEAR(ml::ml_mellin_closed_form(0.5, 0.5, 1, 1, 1), pi / std::tgamma(0.75), 1e-14);
    EXPECT_NEAR(ml::ml_mellin_closed_form(0.5, 1, 1, 1, 4), 1.7724538509055159 / 2, 1e-15);
    EXPECT_THROW(ml::ml_mellin_closed_form(1.0, 1, 1, 1, 1), domain_error);
}

TEST(MittagLeffler, MellinIdentityByQuadrature) {
    for (double a : {0.25, 0.5, 0.75})
        for (double l : {0.5, 0.7, 0.9})
            for (double w : {1.0, 2.0}) {
                MittagLeffler E(l);
                auto r = quad::exp_sinh(
                    [&](double t) { return std::pow(t, a - 1) * E.neg_log(std::log(w * t)).value(); }, 0.0,
                    quad::Options::relative(1e-9));
                ASSERT_TRUE(r.converged) << r.diagnostic;
                double c = ml::ml_mellin_closed_form(a, l, 1, 1, w);
                EXPECT_LE(std::fabs(r.value / c - 1), 1e-6) << a << " " << l << " " << w;
            }
}

TEST(MittagLeffler, SeriesTermsMatchHypergeometricForm) {
    // x^n / Gamma(n + 1) is the 1F1(1;1;x) term and x^n / Gamma(2n + 1) the
    // 0F1(;1/2;x/4) term
    for (int n = 0; n < 30; ++n) {
        double x = 1.7;
        double t1 = std::pow(x, n) / std::tgamma(n + 1.0);
        EXPECT_NEAR(t1, pochhammer(1, n) / pochhammer(1, n) * std::pow(x, n) / std::tgamma(n + 1.0), 1e-15 * t1);
        double t2 = std::pow(x, n) / std::tgamma(2.0 * n + 1.0);
        double h2 = std::pow(x / 4, n) / (pochhammer(0.5, n) * std::tgamma(n + 1.0));
        EXPECT_NEAR(t2 / h2, 1.0, 1e-13) << n;
    }
}

TEST(MittagLeffler, Errors) {
    EXPECT_THROW(MittagLeffler(0.0), domain_error);
    EXPECT_THROW(MittagLeffler(2.5), domain_error);
    EXPECT_THROW(MittagLeffler(1.0, -1.0), domain_error);
    EXPECT_THROW(ml::ml_one(0.5, -2e8), domain_error);
    EXPECT_THROW(ml::ml_one(1.0, 800.0), overflow_error);
    EXPECT_THROW(ml::ml_one(0.5, 400.0), overflow_error);
    EXPECT_THROW(ml::ml_one(0.5, std::nan("")), domain_error);
}
