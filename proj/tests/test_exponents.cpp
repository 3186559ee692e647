#include <gtest/gtest.h>

#include <boost/math/distributions/binomial.hpp>
#include <cmath>
#include <vector>

#include "clutterscan/error.hpp"
#include "clutterscan/exponents.hpp"
#include "clutterscan/moments.hpp"
#include "clutterscan/rng.hpp"

using namespace clutterscan;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no error thrown";
    return ErrorCode::InvalidArgument;
}

// Empty-cell count over every assignment of kk balls to l cells.
CouponMoments enumerate_coupons(int l, int kk) {
    long long total = 1;
    for (int i = 0; i < kk; ++i) total *= l;
    double sum = 0.0, sum2 = 0.0;
    std::vector<int> balls(static_cast<std::size_t>(kk), 0);
    for (long long outcome = 0; outcome < total; ++outcome) {
        long long code = outcome;
        std::vector<bool> hit(static_cast<std::size_t>(l), false);
        for (int b = 0; b < kk; ++b) {
            hit[static_cast<std::size_t>(code % l)] = true;
            code /= l;
        }
        int empty = 0;
        for (bool h : hit) empty += h ? 0 : 1;
        sum += empty;
        sum2 += static_cast<double>(empty) * empty;
    }
    const double mean = sum / static_cast<double>(total);
    return {mean, sum2 / static_cast<double>(total) - mean * mean};
}

}  // namespace

TEST(ExponentRho, Examples) {
    const RhoExact planar = exponent_rho_exact(1, 2, Rational(2), 1);
    EXPECT_EQ(planar.w, Rational(3, 2));
    EXPECT_EQ(planar.rho, Rational(1, 4));
    const RhoExact space = exponent_rho_exact(1, 3, Rational(2), 1);
    EXPECT_EQ(space.w, Rational(3, 2));
    EXPECT_EQ(space.rho, Rational(1, 7));
    const RhoExact sheet = exponent_rho_exact(2, 3, Rational(2), 1);
    EXPECT_EQ(sheet.w, Rational(2));
    EXPECT_EQ(sheet.rho, Rational(1, 3));
    EXPECT_DOUBLE_EQ(exponent_rho(1, 2, 2.0, 1).rho, 0.25);
}

TEST(ExponentRho, MatchesTheFormulaInFloatingPoint) {
    // independent evaluation of w = sum (1 - s/alpha) binom(s+k-1, k-1)
    for (double alpha : {2.5, 3.5, 4.0})
        for (int k = 1; k <= 3; ++k)
            for (int d = k + 1; d <= 5; ++d)
                for (int r0 = 1; r0 < alpha; ++r0) {
                    double w = 0.0;
                    for (int s = 0; s <= r0; ++s) {
                        double b = 1.0;
                        for (int i = 1; i <= k - 1; ++i) b = b * (s + i) / i;
                        w += (1.0 - s / alpha) * b;
                    }
                    const Rho got = exponent_rho(k, d, alpha, r0);
                    EXPECT_NEAR(got.w, w, 1e-12);
                    EXPECT_NEAR(got.rho, k / (k + alpha * (d - k) * w), 1e-12);
                }
}

TEST(ExponentRho, Preconditions) {
    EXPECT_EQ(code_of([] { exponent_rho(1, 2, 2.0, 2); }), ErrorCode::ParamOrder);
    EXPECT_EQ(code_of([] { exponent_rho(2, 2, 2.0, 1); }), ErrorCode::ParamOrder);
    EXPECT_EQ(code_of([] { exponent_rho(1, 2, 3.0, 0); }), ErrorCode::ParamOrder);
}

TEST(ExponentRhoDir, Examples) {
    EXPECT_EQ(exponent_rho_dir_exact(1, 2), Rational(1, 4));
    EXPECT_EQ(exponent_rho_dir_exact(1, 3), Rational(1, 7));
    EXPECT_DOUBLE_EQ(exponent_rho_dir(1, 3), 1.0 / 7.0);
}

TEST(ExponentRhoDir, EqualsTheJetExponentAtAlphaTwo) {
    for (int d = 2; d <= 8; ++d)
        for (int k = 1; k < d; ++k)
            EXPECT_EQ(exponent_rho_exact(k, d, Rational(2), 1).rho, exponent_rho_dir_exact(k, d)) << k << "," << d;
}

TEST(StatisticEps, BalancesCellsAndBoxes) {
    const double n = 1e4;
    const double eps = statistic_eps(1, 2, 2.0, 1, n);
    // eps^{-k/alpha} = eps^{(d-k) w} n
    EXPECT_NEAR(std::pow(eps, -0.5), std::pow(eps, 1.5) * n, 1e-9 * n);
}

TEST(CouponMoments, Examples) {
    const CouponMoments a = coupon_moments(2, 1);
    EXPECT_DOUBLE_EQ(a.mean, 1.0);
    EXPECT_NEAR(a.variance, 0.0, 1e-15);
    const CouponMoments b = coupon_moments(3, 2);
    EXPECT_NEAR(b.mean, 4.0 / 3.0, 1e-15);
    EXPECT_NEAR(b.variance, 2.0 / 9.0, 1e-15);
    const CouponMoments c = coupon_moments(7, 0);
    EXPECT_EQ(c.mean, 7.0);
    EXPECT_EQ(c.variance, 0.0);
}

TEST(CouponMoments, ExactEnumeration) {
    for (int l = 1; l <= 4; ++l)
        for (int kk = 0; kk <= 4; ++kk) {
            const CouponMoments exact = enumerate_coupons(l, kk);
            const CouponMoments got = coupon_moments(l, kk);
            EXPECT_NEAR(got.mean, exact.mean, 1e-12);
            EXPECT_NEAR(got.variance, exact.variance, 1e-12);
        }
}

TEST(CouponMoments, Simulation) {
    Rng rng(5);
    const int l = 50, kk = 60, trials = 20000;
    double sum = 0.0, sum2 = 0.0;
    std::vector<bool> hit(l);
    for (int t = 0; t < trials; ++t) {
        std::fill(hit.begin(), hit.end(), false);
        for (int b = 0; b < kk; ++b) hit[std::uniform_int_distribution<int>(0, l - 1)(rng)] = true;
        const double empty = static_cast<double>(std::count(hit.begin(), hit.end(), false));
        sum += empty;
        sum2 += empty * empty;
    }
    const double mean = sum / trials;
    const double var = sum2 / trials - mean * mean;
    const CouponMoments m = coupon_moments(l, kk);
    EXPECT_NEAR(mean, m.mean, 4 * std::sqrt(var / trials));
    EXPECT_NEAR(var, m.variance, 0.1 * m.variance);
}

TEST(BinomialTail, Examples) {
    const BinomialTail t = binomial_tail_check(100, 0.01, 10, 0.1);
    EXPECT_TRUE(t.holds);
    EXPECT_NEAR(t.bound, std::exp(-1.0), 1e-15);
    const BinomialTail z = binomial_tail_check(20, 0.1, 20, 0.1);
    EXPECT_EQ(z.exact_tail, 0.0);
    EXPECT_TRUE(z.holds);
}

TEST(BinomialTail, MatchesTheExactCdf) {
    for (long long n : {100LL, 1000LL, 10000LL})
        for (double p : {1e-3, 1e-2, 0.1}) {
            const auto b = static_cast<long long>(std::ceil(2.5 * static_cast<double>(n) * p));
            const BinomialTail t = binomial_tail_check(n, p, b, 0.1);
            const boost::math::binomial_distribution<double> dist(static_cast<double>(n), p);
            const double oracle = boost::math::cdf(boost::math::complement(dist, static_cast<double>(b)));
            EXPECT_NEAR(t.exact_tail, oracle, 1e-9 * std::max(oracle, 1e-300) + 1e-300);
            EXPECT_TRUE(t.holds) << n << " " << p;
        }
}

TEST(BinomialTail, Preconditions) {
    EXPECT_EQ(code_of([] { binomial_tail_check(100, 0.6, 200, 0.1); }), ErrorCode::ParamOrder);
    EXPECT_EQ(code_of([] { binomial_tail_check(100, 0.1, 20, 0.1); }), ErrorCode::ParamOrder);
}

TEST(FitScalingExponent, ExactPowerLaw) {
    std::vector<std::pair<double, double>> pts;
    for (double n : {1e2, 1e3, 1e4}) pts.emplace_back(n, std::pow(n, 0.25));
    const FitResult f = fit_scaling_exponent(pts);
    EXPECT_NEAR(f.slope, 0.25, 1e-12);
    EXPECT_NEAR(f.stderr_, 0.0, 1e-12);
    EXPECT_NEAR(f.intercept, 0.0, 1e-12);
}

TEST(FitScalingExponent, ConstantStatistic) {
    const FitResult f = fit_scaling_exponent({{10, 3}, {100, 3}, {1000, 3}, {10000, 3}});
    EXPECT_NEAR(f.slope, 0.0, 1e-14);
}

TEST(FitScalingExponent, NoisyPowerLaw) {
    Rng rng(3);
    std::normal_distribution<double> noise(0.0, 0.1);
    int inside = 0;
    const int reps = 200;
    for (int r = 0; r < reps; ++r) {
        std::vector<std::pair<double, double>> pts;
        for (double n = 1e2; n <= 1e6; n *= 3) pts.emplace_back(n, 2.0 * std::pow(n, 0.3) * std::exp(noise(rng)));
        const FitResult f = fit_scaling_exponent(pts);
        if (std::abs(f.slope - 0.3) <= 2 * f.stderr_) ++inside;
    }
    // a 2-stderr band covers about 93% of fits with 9 points (t with 7 dof)
    EXPECT_GT(inside, reps * 85 / 100);
}

TEST(FitScalingExponent, Degenerate) {
    EXPECT_EQ(code_of([] { fit_scaling_exponent({{1000, 2}}); }), ErrorCode::DegenerateFit);
    EXPECT_EQ(code_of([] { fit_scaling_exponent({{10, 2}, {10, 3}, {100, 4}}); }), ErrorCode::DegenerateFit);
    EXPECT_EQ(code_of([] { fit_scaling_exponent({{10, 2}, {100, 0}, {1000, 4}}); }), ErrorCode::DegenerateFit);
}
