#include <gtest/gtest.h>

#include <cmath>
#include <memory>
#include <numbers>

#include "clutterscan/bump.hpp"
#include "clutterscan/error.hpp"
#include "clutterscan/holder.hpp"
#include "clutterscan/multi_index.hpp"

using namespace clutterscan;

namespace {

long long binom(int n, int r) {
    long long out = 1;
    for (int i = 1; i <= r; ++i) out = out * (n - r + i) / i;
    return out;
}

MultiIndex mi(std::vector<int> e) { return MultiIndex{std::move(e)}; }

std::shared_ptr<LambdaFunction> scalar_fn(std::function<double(double, int)> f) {
    return std::make_shared<LambdaFunction>(1, 1, [f](const Vector& x, const std::vector<MultiIndex>& orders) {
        Matrix out(1, static_cast<Eigen::Index>(orders.size()));
        for (std::size_t j = 0; j < orders.size(); ++j) out(0, static_cast<Eigen::Index>(j)) = f(x(0), orders[j].weight());
        return out;
    });
}

}  // namespace

TEST(MultiIndexSet, Examples) {
    EXPECT_EQ(multi_index_set(1, 1), (std::vector<MultiIndex>{mi({0}), mi({1})}));
    EXPECT_EQ(multi_index_set(2, 1), (std::vector<MultiIndex>{mi({0, 0}), mi({1, 0}), mi({0, 1})}));
    EXPECT_EQ(multi_index_set(2, 2).size(), 6u);
}

TEST(MultiIndexSet, SizeIsTheBinomialSum) {
    for (int k = 1; k <= 4; ++k)
        for (int r0 = 0; r0 <= 4; ++r0) {
            long long expected = 0;
            for (int s = 0; s <= r0; ++s) expected += binom(s + k - 1, k - 1);
            EXPECT_EQ(static_cast<long long>(multi_index_set(k, r0).size()), expected);
            EXPECT_EQ(static_cast<long long>(multi_index_count(k, r0)), expected);
        }
}

TEST(MultiIndexSet, GradedOrderAndPositions) {
    const auto s = multi_index_set(3, 3);
    for (std::size_t i = 0; i + 1 < s.size(); ++i) {
        EXPECT_TRUE(graded_lex_less(s[i], s[i + 1]));
        EXPECT_FALSE(graded_lex_less(s[i + 1], s[i]));
        EXPECT_LE(s[i].weight(), s[i + 1].weight());
    }
    for (std::size_t i = 0; i < s.size(); ++i) EXPECT_EQ(multi_index_position(s[i], 3), static_cast<int>(i));
    EXPECT_EQ(multi_index_position(mi({2, 2, 0}), 3), -1);
}

TEST(HolderParams, StrictFloor) {
    EXPECT_EQ(strict_floor(2.0), 1);
    EXPECT_EQ(strict_floor(2.5), 2);
    EXPECT_EQ(strict_floor(3.0), 2);
    EXPECT_EQ(HolderParams::make(1, 2, 2.0, 1.0, 1).r, 1);
}

TEST(HolderParams, Validation) {
    EXPECT_THROW(HolderParams::make(2, 2, 2.0, 1.0, 1), Error);
    EXPECT_THROW(HolderParams::make(1, 2, 1.0, 1.0, 1), Error);
    EXPECT_THROW(HolderParams::make(1, 2, 2.0, 0.0, 1), Error);
    try {
        HolderParams::make(1, 2, 2.0, 1.0, 2);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::ParamOrder);
    }
}

TEST(DiscrepancyPhi, Examples) {
    const auto p = HolderParams::make(1, 2, 2.0, 1.0, 1);
    Matrix a(1, 2), b(1, 2);
    a << 0.5, 0.2;
    EXPECT_EQ(discrepancy_phi(a, a, p), 0.0);
    b << 0.6, 0.2;
    EXPECT_NEAR(discrepancy_phi(a, b, p), 0.1, 1e-12);
    b << 0.5, 0.5;
    EXPECT_NEAR(discrepancy_phi(a, b, p), 0.09, 1e-12);
    EXPECT_EQ(discrepancy_phi(a, b, p), discrepancy_phi(b, a, p));
}

TEST(DiscrepancyPhi, ExponentPerWeight) {
    const auto p = HolderParams::make(1, 3, 2.5, 1.0, 2);
    Matrix a = Matrix::Zero(2, 3), b = Matrix::Zero(2, 3);
    b(1, 2) = 0.4;  // weight-two gap: exponent 2.5 / 0.5 = 5
    EXPECT_NEAR(discrepancy_phi(a, b, p), std::pow(0.4, 5.0), 1e-15);
}

TEST(Zeta, PlateauAndSupport) {
    for (double t : {0.0, 0.1, -0.25, 0.25}) {
        const auto z = zeta_derivatives(t, 3);
        EXPECT_EQ(z[0], 1.0);
        for (int n = 1; n <= 3; ++n) EXPECT_EQ(z[static_cast<std::size_t>(n)], 0.0);
    }
    for (double t : {0.5, -0.5, 0.7}) {
        const auto z = zeta_derivatives(t, 3);
        for (double v : z) EXPECT_EQ(v, 0.0);
    }
}

TEST(Zeta, DerivativesMatchFiniteDifferences) {
    const double h = 1e-5;
    for (double t = -0.49; t < 0.49; t += 0.0137) {
        const auto z = zeta_derivatives(t, 3);
        const auto zp = zeta_derivatives(t + h, 3);
        const auto zm = zeta_derivatives(t - h, 3);
        for (int n = 0; n < 3; ++n) {
            const double fd = (zp[static_cast<std::size_t>(n)] - zm[static_cast<std::size_t>(n)]) / (2 * h);
            EXPECT_NEAR(z[static_cast<std::size_t>(n + 1)], fd, 1e-4 * std::max(1.0, std::abs(fd)));
        }
    }
}

TEST(BumpBasis, KroneckerConditionsAtTheOrigin) {
    for (int k : {1, 2}) {
        const BumpBasis basis(k, 2, 3);
        const Vector zero = Vector::Zero(k);
        for (const auto& s : basis.indices())
            for (const auto& t : multi_index_set(k, 2))
                EXPECT_DOUBLE_EQ(basis.derivative(s, t, zero), s == t ? 1.0 : 0.0);
    }
}

TEST(BumpBasis, FirstOrderBumpIsLinearNearZero) {
    const BumpBasis basis(1, 1, 2);
    Vector u(1);
    u << 0.0;
    EXPECT_EQ(basis.derivative(mi({1}), mi({0}), u), 0.0);
    EXPECT_EQ(basis.derivative(mi({1}), mi({1}), u), 1.0);
    u << 0.2;
    EXPECT_DOUBLE_EQ(basis.derivative(mi({1}), mi({0}), u), 0.2);
}

TEST(BumpBasis, VanishesOnTheBoundary) {
    const BumpBasis basis(2, 1, 2);
    for (int i = 0; i <= 40; ++i) {
        const double v = -0.5 + i / 40.0;
        for (const Vector& u : {Vector{{0.5, v}}, Vector{{-0.5, v}}, Vector{{v, 0.5}}, Vector{{v, -0.5}}})
            for (const auto& s : basis.indices())
                for (const auto& t : multi_index_set(2, 2)) EXPECT_EQ(basis.derivative(s, t, u), 0.0);
    }
}

TEST(ConstructionConstants, EpsPrimeRelation) {
    for (double alpha : {2.0, 2.5}) {
        const auto p = HolderParams::make(1, 2, alpha, 3.0, 1);
        const auto cc = construction_constants(p);
        EXPECT_GT(cc.c2, 1.0);
        EXPECT_GE(cc.c3, cc.bump_sup);
        const double eps = 1e-6;
        EXPECT_NEAR(eps_prime_for(p, eps), std::pow(cc.c2 * eps, 1.0 / alpha), 1e-15);
        // the defining inequality c3 c2^{r/alpha - 1} <= beta
        EXPECT_LE(cc.c3 * std::pow(cc.c2, p.r / alpha - 1.0), p.beta * (1 + 1e-9));
    }
}

TEST(Membership, ZeroFunctionPasses) {
    const auto p = HolderParams::make(2, 3, 2.0, 1.0, 1);
    const auto z = AffineFunction::zero(2, 1);
    const auto rep = holder_membership_check(z, p, 11);
    EXPECT_TRUE(rep.pass);
    for (double v : rep.derivative_norms) EXPECT_EQ(v, 0.0);
}

TEST(Membership, LinearAtTheBound) {
    const double beta = 0.7;
    const auto p = HolderParams::make(1, 2, 2.0, beta, 1);
    Matrix slope(1, 1);
    slope << beta;
    const AffineFunction f(Vector::Zero(1), slope);
    const auto rep = holder_membership_check(f, p, 101);
    EXPECT_TRUE(rep.pass);
    EXPECT_DOUBLE_EQ(rep.derivative_norms[1], beta);
}

TEST(Membership, QuadraticFailsTheIncrementBound) {
    const double beta = 0.2;
    const auto p = HolderParams::make(1, 2, 2.0, beta, 1);
    const auto f = scalar_fn([beta](double x, int m) {
        if (m == 0) return 2 * beta * x * x;
        if (m == 1) return 4 * beta * x;
        return m == 2 ? 4 * beta : 0.0;
    });
    const auto rep = holder_membership_check(*f, p, 101);
    EXPECT_FALSE(rep.pass);
    EXPECT_NEAR(rep.max_holder_ratio, 4 * beta, 1e-9);
    EXPECT_THROW(require_in_class(*f, p), Error);
}

TEST(Sinusoid, RandomMembersAreInTheClass) {
    Rng rng(3);
    const auto p = HolderParams::make(1, 2, 2.0, 1.0, 1);
    for (int t = 0; t < 20; ++t) {
        const SinusoidFunction g = SinusoidFunction::random(1.0, rng);
        const auto rep = holder_membership_check(g, p, 201);
        EXPECT_TRUE(rep.pass);
        EXPECT_GE(rep.value_min, 0.1 - 1e-12);
        EXPECT_LE(rep.value_max, 0.9 + 1e-12);
    }
}

TEST(Sinusoid, JetMatchesFiniteDifferences) {
    const SinusoidFunction g(0.5, 0.1, 5.0, 0.3);
    const auto orders = multi_index_set(1, 3);
    const double h = 1e-5;
    for (double x = 0.05; x < 1.0; x += 0.1) {
        const Matrix j = g.jet(Vector{{x}}, orders);
        const Matrix jp = g.jet(Vector{{x + h}}, orders);
        const Matrix jm = g.jet(Vector{{x - h}}, orders);
        for (int m = 0; m < 3; ++m) EXPECT_NEAR(j(0, m + 1), (jp(0, m) - jm(0, m)) / (2 * h), 1e-6);
    }
}

TEST(EvaluateJet, Errors) {
    const auto z = AffineFunction::zero(1, 1);
    EXPECT_THROW(evaluate_jet(z, Vector{{1.5}}, multi_index_set(1, 1)), Error);
    EXPECT_EQ(evaluate_jet(z, Vector{{0.5}}, multi_index_set(1, 1)).cwiseAbs().maxCoeff(), 0.0);
}

TEST(GraphLift, ZeroFunction) {
    const auto p = HolderParams::make(2, 4, 2.0, 1.0, 1);
    const GraphLift f(std::make_shared<AffineFunction>(AffineFunction::zero(2, 2)), p, 11);
    const Vector x{{0.3, 0.6}};
    EXPECT_LT(canonical_angle(tangent_space(f, x), Subspace(Matrix::Identity(4, 2))), 1e-12);
    EXPECT_NEAR(f.angle_condition(x), std::numbers::pi / 2, 1e-12);
}

TEST(GraphLift, AffineLine) {
    const auto p = HolderParams::make(1, 2, 2.0, 1.0, 1);
    Matrix slope(1, 1);
    slope << 0.5;
    const GraphLift f(std::make_shared<AffineFunction>(Vector::Zero(1), slope), p);
    Matrix expected(2, 1);
    expected << 2 / std::sqrt(5.0), 1 / std::sqrt(5.0);
    for (double x : {0.1, 0.5, 0.9}) {
        const Subspace t = tangent_space(f, Vector{{x}});
        EXPECT_LT((t.frame().cwiseAbs() - expected).cwiseAbs().maxCoeff(), 1e-14);
    }
}

TEST(GraphLift, RequiresTheClass) {
    const auto p = HolderParams::make(1, 2, 2.0, 1.0, 1);
    const auto steep = scalar_fn([](double x, int m) { return m == 0 ? 3 * x : (m == 1 ? 3.0 : 0.0); });
    try {
        GraphLift f(steep, p);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NotInClass);
    }
}

TEST(GraphLift, TangentIsLipschitz) {
    const auto p = HolderParams::make(1, 2, 2.0, 1.0, 1);
    const GraphLift f(std::make_shared<SinusoidFunction>(0.5, 0.05, 4.0, 0.0), p);
    const Vector x{{0.4}};
    std::vector<double> ratio;
    for (double h : {1e-2, 1e-3, 1e-4}) {
        const double a = canonical_angle(tangent_space(f, x), tangent_space(f, Vector{{0.4 + h}}));
        EXPECT_GT(a, 0.0);
        ratio.push_back(a / h);
    }
    EXPECT_NEAR(ratio[1] / ratio[0], 1.0, 0.05);
    EXPECT_NEAR(ratio[2] / ratio[1], 1.0, 0.05);
}

TEST(GraphLift, AngleBoundedByDerivativeGap) {
    const auto p = HolderParams::make(1, 2, 2.0, 1.0, 1);
    Rng rng(5);
    double worst = 0.0;
    for (int t = 0; t < 20; ++t) {
        auto g1 = std::make_shared<SinusoidFunction>(SinusoidFunction::random(1.0, rng));
        auto g2 = std::make_shared<SinusoidFunction>(SinusoidFunction::random(1.0, rng));
        const GraphLift f1(g1, p, 21), f2(g2, p, 21);
        double gap = 0.0;
        double ang = 0.0;
        for (int i = 0; i <= 100; ++i) {
            const Vector x{{i / 100.0}};
            gap = std::max(gap, std::abs(f1.partials(x)(1, 0) - f2.partials(x)(1, 0)));
            ang = std::max(ang, canonical_angle(tangent_space(f1, x), tangent_space(f2, x)));
        }
        worst = std::max(worst, ang / gap);
    }
    EXPECT_LE(worst, 1.0 + 1e-12);
}

TEST(TangentFromPartials, Degenerate) {
    Matrix m(3, 2);
    m << 1, 2, 0, 0, 1, 2;
    try {
        tangent_from_partials(m);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::DegenerateTangent);
    }
}
