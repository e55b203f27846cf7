#include <array>
#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "vqsp/ansatz.hpp"
#include "vqsp/cost.hpp"
#include "vqsp/errors.hpp"

using namespace vqsp;

namespace {

std::vector<double> draw_theta(std::size_t m, std::uint64_t seed) {
    auto rng = make_rng({seed, 5});
    return random_parameters(m, rng);
}

CostContext exact_ctx(AnsatzKind kind, std::size_t n, std::size_t l, TargetName target = TargetName::GHZ) {
    return CostContext(build_ansatz({kind, n, l}), completed_unitary(make_target(target, n)));
}

double fd_cost(const CostContext &ctx, std::vector<double> theta, std::size_t k, double h) {
    theta[k] += h;
    const double up = cost(ctx, theta);
    theta[k] -= 2 * h;
    return (up - cost(ctx, theta)) / (2 * h);
}

} // namespace

TEST(Cost, DistanceFromOverlap) {
    EXPECT_EQ(cost_from_overlap(1.0), 0.0);
    EXPECT_EQ(cost_from_overlap(0.0), 1.0);
    EXPECT_NEAR(cost_from_overlap(0.51), 0.7, 1e-12);
    EXPECT_EQ(cost_from_overlap(1.2), 0.0);
    EXPECT_EQ(cost_from_overlap(-0.1), 1.0);
}

TEST(Cost, ZeroAnglesAgainstGhz3) {
    const auto ctx = exact_ctx(AnsatzKind::G2, 3, 1);
    EXPECT_NEAR(overlap_probability(ctx, std::vector<double>(6, 0.0)), 0.5, 1e-12);
}

TEST(Cost, SameCircuitGivesUnitOverlap) {
    Circuit c(3);
    c.ry(0).mcz({0, 1}).rx(2).crx(1, 2).rz(0);
    const std::vector<double> theta{0.3, -1.2, 2.2, 0.9};
    const CostContext ctx(c, TargetUnitary::from_circuit(bind(c, theta)));
    EXPECT_NEAR(overlap_probability(ctx, theta), 1.0, 1e-12);
    EXPECT_NEAR(cost(ctx, theta), 0.0, 1e-6);
    for (double g : overlap_gradient(ctx, theta)) {
        EXPECT_NEAR(g, 0.0, 1e-12);
    }
}

TEST(Cost, PipelineMatchesInnerProduct) {
    for (auto target : {TargetName::GHZ, TargetName::W, TargetName::AME3}) {
        const auto state = make_target(target, 3);
        const CostContext ctx(build_ansatz({AnsatzKind::G2_GN_W, 3, 1}), completed_unitary(state));
        for (std::uint64_t s = 0; s < 50; ++s) {
            const auto theta = draw_theta(ctx.ansatz().n_params(), s);
            const double direct = fidelity(state.state, prepare(ctx.ansatz(), theta));
            EXPECT_NEAR(overlap_probability(ctx, theta), direct, 1e-8);
        }
    }
}

TEST(Cost, ShotEstimateNearHalf) {
    const CostContext ctx(build_ansatz({AnsatzKind::G2, 3, 1}), completed_unitary(make_target(TargetName::GHZ, 3)),
                          ShotsMode{10000, 4});
    EXPECT_NEAR(overlap_probability(ctx, std::vector<double>(6, 0.0)), 0.5, 0.025);
}

TEST(Cost, ShotEstimatorIsUnbiased) {
    const auto exact = exact_ctx(AnsatzKind::G2, 3, 1);
    const auto theta = draw_theta(6, 1);
    const double p = overlap_probability(exact, theta);
    const CostContext shots(exact.ansatz(), exact.target(), ShotsMode{1000, 8});
    double mean = 0.0;
    for (std::uint64_t s = 0; s < 100; ++s) {
        mean += overlap_probability(shots, theta, s);
    }
    mean /= 100;
    const double sigma = std::sqrt(p * (1 - p) / 1000);
    EXPECT_LT(std::abs(mean - p), 3 * sigma / std::sqrt(100.0));
}

TEST(Cost, ShotStreamsAreReproducible) {
    const CostContext ctx(build_ansatz({AnsatzKind::G2, 3, 1}), completed_unitary(make_target(TargetName::W, 3)),
                          ShotsMode{500, 77});
    const auto theta = draw_theta(6, 2);
    EXPECT_EQ(overlap_probability(ctx, theta, 3), overlap_probability(ctx, theta, 3));
    EXPECT_EQ(gradient(ctx, theta, 9), gradient(ctx, theta, 9));
}

TEST(Cost, NoiseRequiresShots) {
    auto ctx = exact_ctx(AnsatzKind::G2, 3, 1);
    EXPECT_THROW(ctx.with_noise({0.01, {}}), ValidationError);
    EXPECT_THROW(ctx.with_mitigation(analytic_calibration_matrix(3, {0.01, {}})), ValidationError);
}

TEST(Cost, ThetaLengthChecked) {
    const auto ctx = exact_ctx(AnsatzKind::G2, 3, 1);
    EXPECT_THROW(overlap_probability(ctx, std::vector<double>(5, 0.0)), ValidationError);
}

TEST(Gradient, MatchesFiniteDifferencesG2) {
    const auto ctx = exact_ctx(AnsatzKind::G2, 3, 1);
    const auto theta = draw_theta(6, 3);
    const auto g = gradient(ctx, theta);
    for (std::size_t k = 0; k < g.size(); ++k) {
        EXPECT_NEAR(g[k], fd_cost(ctx, theta, k, 1e-5), 1e-6) << "k=" << k;
    }
}

TEST(Gradient, MatchesFiniteDifferencesAcrossFamilies) {
    std::size_t instance = 0;
    for (auto kind : {AnsatzKind::G2, AnsatzKind::G2_GN, AnsatzKind::G2_GN_W}) {
        for (std::size_t n : {3, 4}) {
            for (auto target : {TargetName::GHZ, TargetName::W}) {
                const auto ctx = exact_ctx(kind, n, 1, target);
                const auto theta = draw_theta(ctx.ansatz().n_params(), 100 + instance++);
                const auto g = gradient(ctx, theta);
                double err = 0.0;
                for (std::size_t k = 0; k < g.size(); ++k) {
                    err = std::max(err, std::abs(g[k] - fd_cost(ctx, theta, k, 1e-5)));
                }
                EXPECT_LT(err, 1e-5) << to_string(kind) << " N=" << n;
            }
        }
    }
    EXPECT_GE(instance, 12u);
}

TEST(Gradient, ControlledRotationFourTermShift) {
    Circuit c(2);
    c.ry(0).crx(0, 1).crz(1, 0);
    const CostContext ctx(c, completed_unitary(make_target(TargetName::W, 2)));
    const std::vector<double> theta{1.1, 0.7, -2.3};
    for (std::size_t k = 0; k < 3; ++k) {
        auto plus = theta;
        auto minus = theta;
        plus[k] += 1e-5;
        minus[k] -= 1e-5;
        const double fd = (overlap_probability(ctx, plus) - overlap_probability(ctx, minus)) / 2e-5;
        EXPECT_NEAR(overlap_derivative(ctx, theta, k), fd, 1e-8);
    }
}

TEST(Gradient, ComponentAgreesWithFullGradient) {
    const auto ctx = exact_ctx(AnsatzKind::G2_GN, 3, 1);
    const auto theta = draw_theta(9, 4);
    const auto g = gradient(ctx, theta);
    for (std::size_t k = 0; k < g.size(); ++k) {
        EXPECT_DOUBLE_EQ(gradient_component(ctx, theta, k), g[k]);
    }
}

TEST(Gradient, FiniteNearConvergence) {
    Circuit c(2);
    c.ry(0).ry(1);
    const std::vector<double> theta{0.4, 0.9};
    const CostContext ctx(c, TargetUnitary::from_circuit(bind(c, theta)));
    auto near = theta;
    near[0] += 1e-9;
    ASSERT_LT(cost(ctx, near), kCostFloor);
    for (double g : gradient(ctx, near)) {
        EXPECT_TRUE(std::isfinite(g));
    }
}

TEST(Gradient, ShotGradientWithinBinomialError) {
    const auto exact = exact_ctx(AnsatzKind::G2, 3, 1);
    const auto theta = draw_theta(6, 6);
    const CostContext shots(exact.ansatz(), exact.target(), ShotsMode{10000, 21});
    const auto ge = overlap_gradient(exact, theta);
    const auto gs = overlap_gradient(shots, theta);
    for (std::size_t k = 0; k < ge.size(); ++k) {
        auto plus = theta;
        auto minus = theta;
        plus[k] += std::numbers::pi / 2;
        minus[k] -= std::numbers::pi / 2;
        const double pp = overlap_probability(exact, plus);
        const double pm = overlap_probability(exact, minus);
        const double sigma = 0.5 * std::sqrt((pp * (1 - pp) + pm * (1 - pm)) / 10000);
        EXPECT_LT(std::abs(gs[k] - ge[k]), 5 * sigma + 1e-12) << "k=" << k;
    }
}

TEST(Metric, SingleRyOnZeroState) {
    Circuit c(1);
    c.ry(0);
    const auto g = fubini_study_metric(c, std::vector<double>{0.0});
    EXPECT_NEAR(g(0, 0), 0.25, 1e-12);
}

TEST(Metric, SymmetricAndPositiveSemidefinite) {
    for (std::uint64_t s = 0; s < 20; ++s) {
        const auto kind = std::array{AnsatzKind::G2, AnsatzKind::G2_GN, AnsatzKind::G2_GN_W}[s % 3];
        const auto c = build_ansatz({kind, 3 + s % 2, 1 + s % 2});
        const auto g = fubini_study_metric(c, draw_theta(c.n_params(), s));
        EXPECT_LT((g - g.transpose()).cwiseAbs().maxCoeff(), 1e-10);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(g);
        EXPECT_GT(eig.eigenvalues().minCoeff(), -1e-8);
    }
}

TEST(Metric, MatchesSecondOrderFidelityExpansion) {
    const auto c = build_ansatz({AnsatzKind::G2_GN_W, 3, 1});
    for (std::uint64_t s = 0; s < 5; ++s) {
        const auto theta = draw_theta(c.n_params(), 40 + s);
        const auto g = fubini_study_metric(c, theta);
        auto rng = make_rng({s, 99});
        std::normal_distribution<double> gauss;
        Eigen::VectorXd delta(static_cast<Eigen::Index>(c.n_params()));
        for (Eigen::Index i = 0; i < delta.size(); ++i) {
            delta(i) = 1e-3 * gauss(rng);
        }
        auto moved = theta;
        for (std::size_t i = 0; i < moved.size(); ++i) {
            moved[i] += delta(static_cast<Eigen::Index>(i));
        }
        const double infidelity = 1.0 - fidelity(prepare(c, theta), prepare(c, moved));
        const double quadratic = delta.dot(g * delta);
        EXPECT_LT(std::abs(infidelity - quadratic), 0.05 * quadratic);
    }
}

TEST(Metric, ShotsModeUnsupported) {
    const CostContext ctx(build_ansatz({AnsatzKind::G2, 3, 1}), completed_unitary(make_target(TargetName::GHZ, 3)),
                          ShotsMode{100, 0});
    EXPECT_THROW(fubini_study_metric(ctx, std::vector<double>(6, 0.0)), UnsupportedModeError);
}

TEST(Variance, ConstantCostGivesZero) {
    Circuit c(2);
    c.ry(0).rz(1);
    const auto target = completed_unitary(make_target(TargetName::GHZ, 2));
    EXPECT_LT(gradient_variance(c, target, 1, 50, 3), 1e-25);
}

TEST(Variance, DeterministicAndPositive) {
    const auto c = build_ansatz({AnsatzKind::G2, 4, 2});
    const auto target = completed_unitary(make_target(TargetName::GHZ, 4));
    const double a = gradient_variance(c, target, 0, 50, 12);
    EXPECT_EQ(a, gradient_variance(c, target, 0, 50, 12));
    EXPECT_GT(a, 0.0);
    EXPECT_THROW(gradient_variance(c, target, 0, 1, 12), ValidationError);
}

TEST(Variance, DecaysWithQubitCount) {
    const double v2 = gradient_variance(build_ansatz({AnsatzKind::G2, 2, 2}),
                                        completed_unitary(make_target(TargetName::GHZ, 2)), 0, 200, 1);
    const double v6 = gradient_variance(build_ansatz({AnsatzKind::G2, 6, 2}),
                                        completed_unitary(make_target(TargetName::GHZ, 6)), 0, 200, 1);
    EXPECT_LT(v6, v2);
}
