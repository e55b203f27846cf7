#pragma once

#include <span>
#include <vector>

namespace vqsp {

struct Summary {
    double mean = 0.0;
    /// Sample standard deviation (n - 1); zero for fewer than two values.
    double std = 0.0;

    bool operator==(const Summary &) const = default;
};

[[nodiscard]] Summary summarize(std::span<const double> values);

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double slope_stderr = 0.0;
    double r_squared = 0.0;

    bool operator==(const LinearFit &) const = default;
};

/// Ordinary least squares y = intercept + slope * x. Needs at least 3 points.
[[nodiscard]] LinearFit fit_line(std::span<const double> x, std::span<const double> y);

/// Ranks starting at 1; ties share their average rank.
[[nodiscard]] std::vector<double> ranks(std::span<const double> values);

/// Pearson correlation of the ranks. Zero when either side is constant.
[[nodiscard]] double spearman(std::span<const double> x, std::span<const double> y);

} // namespace vqsp
