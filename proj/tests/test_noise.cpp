#include <bit>
#include <cmath>
#include <filesystem>
#include <sstream>

#include <gtest/gtest.h>

#include "vqsp/errors.hpp"
#include "vqsp/noise.hpp"

using namespace vqsp;

namespace {

ProbabilityVector random_distribution(std::size_t n, std::uint64_t seed) {
    auto rng = make_rng({seed, 17});
    std::uniform_real_distribution<double> u(0.0, 1.0);
    ProbabilityVector p{n, std::vector<double>(std::size_t{1} << n)};
    double total = 0.0;
    for (auto &v : p.probs) {
        v = u(rng);
        total += v;
    }
    for (auto &v : p.probs) {
        v /= total;
    }
    return p;
}

// Entry b' = sum_b p_b eps^d(b,b') (1-eps)^(N-d(b,b')).
ProbabilityVector hamming_channel(const ProbabilityVector &p, double eps) {
    const std::size_t n = p.n_qubits;
    ProbabilityVector out{n, std::vector<double>(p.probs.size(), 0.0)};
    for (std::size_t to = 0; to < p.probs.size(); ++to) {
        for (std::size_t from = 0; from < p.probs.size(); ++from) {
            const int d = std::popcount(to ^ from);
            out.probs[to] += p.probs[from] * std::pow(eps, d) * std::pow(1 - eps, static_cast<int>(n) - d);
        }
    }
    return out;
}

double max_abs_diff(const std::vector<double> &a, const std::vector<double> &b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        m = std::max(m, std::abs(a[i] - b[i]));
    }
    return m;
}

} // namespace

TEST(Noise, SingleQubitVertex) {
    const auto out = apply_readout_noise({1, {1.0, 0.0}}, {0.1, {}});
    EXPECT_NEAR(out.probs[0], 0.9, 1e-15);
    EXPECT_NEAR(out.probs[1], 0.1, 1e-15);
}

TEST(Noise, TwoQubitHammingExpansion) {
    const auto out = apply_readout_noise({2, {1.0, 0.0, 0.0, 0.0}}, {0.1, {}});
    EXPECT_NEAR(out.probs[0], 0.81, 1e-15);
    EXPECT_NEAR(out.probs[1], 0.09, 1e-15);
    EXPECT_NEAR(out.probs[2], 0.09, 1e-15);
    EXPECT_NEAR(out.probs[3], 0.01, 1e-15);
}

TEST(Noise, MatchesHammingOracleOnRandomInputs) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto p = random_distribution(4, seed);
        const auto fast = apply_readout_noise(p, {0.07, {}});
        EXPECT_LT(max_abs_diff(fast.probs, hamming_channel(p, 0.07).probs), 1e-14);
    }
}

TEST(Noise, ZeroRateIsIdentity) {
    const auto p = random_distribution(3, 1);
    EXPECT_EQ(apply_readout_noise(p, {0.0, {}}).probs, p.probs);
}

TEST(Noise, ChannelIsStochastic) {
    const auto out = apply_readout_noise(random_distribution(5, 2), {0.2, {}});
    double total = 0.0;
    for (double v : out.probs) {
        EXPECT_GE(v, 0.0);
        total += v;
    }
    EXPECT_NEAR(total, 1.0, 1e-12);
}

TEST(Noise, ChannelComposition) {
    const double e1 = 0.03;
    const double e2 = 0.11;
    for (std::size_t n = 1; n <= 4; ++n) {
        const auto p = random_distribution(n, n);
        const auto twice = apply_readout_noise(apply_readout_noise(p, {e1, {}}), {e2, {}});
        const auto once = apply_readout_noise(p, {e1 * (1 - e2) + e2 * (1 - e1), {}});
        EXPECT_LT(max_abs_diff(twice.probs, once.probs), 1e-14);
    }
}

TEST(Noise, PerQubitRates) {
    const ReadoutNoiseModel model{0.0, {0.1, 0.0}};
    const auto out = apply_readout_noise({2, {1.0, 0.0, 0.0, 0.0}}, model);
    EXPECT_NEAR(out.probs[0], 0.9, 1e-15);
    EXPECT_NEAR(out.probs[2], 0.1, 1e-15);
    EXPECT_THROW(apply_readout_noise({2, {1.0, 0.0, 0.0, 0.0}}, {0.0, {0.1}}), ValidationError);
}

TEST(Noise, RateBounds) {
    EXPECT_THROW(apply_readout_noise({1, {1.0, 0.0}}, {0.5, {}}), ValidationError);
    EXPECT_THROW(apply_readout_noise({1, {1.0, 0.0}}, {-0.01, {}}), ValidationError);
}

TEST(Calibration, ZeroNoiseIsIdentity) {
    const auto cal = build_calibration_matrix(3, {0.0, {}}, 100, 5);
    EXPECT_EQ(cal.m, Eigen::MatrixXd::Identity(8, 8));
}

TEST(Calibration, SeedDeterminism) {
    const auto a = build_calibration_matrix(3, {0.05, {}}, 1000, 9);
    const auto b = build_calibration_matrix(3, {0.05, {}}, 1000, 9);
    const auto c = build_calibration_matrix(3, {0.05, {}}, 1000, 10);
    EXPECT_EQ(a.m, b.m);
    EXPECT_NE(a.m, c.m);
}

TEST(Calibration, ConvergesToAnalyticColumns) {
    const std::uint64_t shots = 1000000;
    const ReadoutNoiseModel model{0.05, {}};
    const auto sampled = build_calibration_matrix(3, model, shots, 3);
    const auto exact = analytic_calibration_matrix(3, model);
    EXPECT_NO_THROW(sampled.validate());
    for (Eigen::Index i = 0; i < 8; ++i) {
        for (Eigen::Index j = 0; j < 8; ++j) {
            const double p = exact.m(i, j);
            const double sigma = std::sqrt(p * (1 - p) / static_cast<double>(shots));
            EXPECT_LE(std::abs(sampled.m(i, j) - p), 5 * sigma + 1e-12);
        }
    }
}

TEST(Calibration, RejectsZeroShots) {
    EXPECT_THROW(build_calibration_matrix(2, {0.01, {}}, 0, 0), ValidationError);
}

TEST(Mitigation, AnalyticRoundTrip) {
    const ReadoutNoiseModel model{0.04, {}};
    const auto cal = analytic_calibration_matrix(4, model);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto p = random_distribution(4, seed);
        const auto back = mitigate(cal, apply_readout_noise(p, model));
        EXPECT_LT(max_abs_diff(back.probs, p.probs), 1e-9);
    }
}

TEST(Mitigation, IdentityCalibrationIsNoOp) {
    const auto cal = analytic_calibration_matrix(3, {0.0, {}});
    const auto p = random_distribution(3, 4);
    EXPECT_LT(max_abs_diff(mitigate(cal, p).probs, p.probs), 1e-15);
    EXPECT_NEAR(Mitigator(cal).condition_number(), 1.0, 1e-12);
}

TEST(Mitigation, SampledCalibrationRoundTrip) {
    const ReadoutNoiseModel model{0.03, {}};
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto cal = build_calibration_matrix(5, model, 10000, seed);
        const auto p = random_distribution(5, 100 + seed);
        const auto back = mitigate(cal, apply_readout_noise(p, model));
        EXPECT_LT(max_abs_diff(back.probs, p.probs), 0.02) << "seed " << seed;
    }
}

TEST(Mitigation, ClipsNegativeQuasiProbabilities) {
    const auto cal = analytic_calibration_matrix(2, {0.1, {}});
    const auto out = mitigate(cal, {2, {1.0, 0.0, 0.0, 0.0}});
    double total = 0.0;
    for (double v : out.probs) {
        EXPECT_GE(v, 0.0);
        total += v;
    }
    EXPECT_NEAR(total, 1.0, 1e-12);
    // Inverse column is (0.81, -0.09, -0.09, 0.01) / 0.64; clipping keeps 0.81 and 0.01.
    EXPECT_NEAR(out.probs[0], 81.0 / 82.0, 1e-12);
    EXPECT_NEAR(out.probs[3], 1.0 / 82.0, 1e-12);
}

TEST(Mitigation, IllConditionedMatrixReported) {
    CalibrationMatrix cal{1, Eigen::MatrixXd(2, 2)};
    cal.m << 0.5, 0.5, 0.5, 0.5;
    try {
        Mitigator m(cal);
        FAIL() << "expected MitigationError";
    } catch (const MitigationError &e) {
        EXPECT_GT(e.condition_number(), kMaxConditionNumber);
    }
}

TEST(Calibration, TextRoundTrip) {
    const auto cal = build_calibration_matrix(3, {0.02, {}}, 777, 1);
    std::stringstream io;
    write_calibration(io, cal);
    const auto back = read_calibration(io);
    EXPECT_EQ(back.n_qubits, 3u);
    EXPECT_EQ(back.m, cal.m);

    const auto path = std::filesystem::temp_directory_path() / "vqsp_cal_roundtrip.txt";
    save_calibration(path.string(), cal);
    EXPECT_EQ(load_calibration(path.string()).m, cal.m);
    std::filesystem::remove(path);
}

TEST(Calibration, ReaderRejectsMalformedFiles) {
    std::istringstream ragged("1 0\n0\n");
    EXPECT_THROW(read_calibration(ragged), ValidationError);
    std::istringstream three("1 0 0\n0 1 0\n0 0 1\n");
    EXPECT_THROW(read_calibration(three), ValidationError);
    std::istringstream bad_sum("0.5 0\n0.4 1\n");
    EXPECT_THROW(read_calibration(bad_sum), ValidationError);
}
