#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "vqsp/errors.hpp"
#include "vqsp/stats.hpp"

using namespace vqsp;

TEST(Stats, SummaryUsesSampleDeviation) {
    const std::vector<double> v{1.0, 2.0, 3.0, 4.0};
    const auto s = summarize(v);
    EXPECT_DOUBLE_EQ(s.mean, 2.5);
    EXPECT_NEAR(s.std, std::sqrt(5.0 / 3.0), 1e-12);
    EXPECT_EQ(summarize(std::vector<double>{7.0}).std, 0.0);
}

TEST(Stats, ExactLine) {
    const std::vector<double> x{2, 3, 4, 5, 6};
    std::vector<double> y;
    for (double v : x) {
        y.push_back(1.5 - 0.75 * v);
    }
    const auto fit = fit_line(x, y);
    EXPECT_NEAR(fit.slope, -0.75, 1e-12);
    EXPECT_NEAR(fit.intercept, 1.5, 1e-12);
    EXPECT_NEAR(fit.slope_stderr, 0.0, 1e-9);
    EXPECT_NEAR(fit.r_squared, 1.0, 1e-12);
}

TEST(Stats, NoisyLineStandardError) {
    const std::vector<double> x{0, 1, 2, 3};
    const std::vector<double> y{0.1, 0.9, 2.2, 2.8};
    const auto fit = fit_line(x, y);
    // Hand computation: Sxx = 5, Sxy = 4.7, SSE = 0.082.
    EXPECT_NEAR(fit.slope, 0.94, 1e-12);
    EXPECT_NEAR(fit.intercept, 0.09, 1e-12);
    EXPECT_NEAR(fit.slope_stderr, std::sqrt(0.082 / 2 / 5), 1e-12);
}

TEST(Stats, FitNeedsThreeDistinctPoints) {
    EXPECT_THROW(fit_line(std::vector<double>{1, 2}, std::vector<double>{1, 2}), ValidationError);
    EXPECT_THROW(fit_line(std::vector<double>{1, 1, 1}, std::vector<double>{1, 2, 3}), ValidationError);
    EXPECT_THROW(fit_line(std::vector<double>{1, 2, 3}, std::vector<double>{1, 2}), ValidationError);
}

TEST(Stats, RanksAverageTies) {
    EXPECT_EQ(ranks(std::vector<double>{10, 30, 20, 20}), (std::vector<double>{1, 4, 2.5, 2.5}));
}

TEST(Stats, SpearmanMonotone) {
    const std::vector<double> x{1, 2, 3, 4, 5};
    EXPECT_NEAR(spearman(x, std::vector<double>{0.1, 0.2, 0.8, 0.9, 5.0}), 1.0, 1e-12);
    EXPECT_NEAR(spearman(x, std::vector<double>{5, 4, 3, 2, 1}), -1.0, 1e-12);
    EXPECT_EQ(spearman(x, std::vector<double>{1, 1, 1, 1, 1}), 0.0);
}
