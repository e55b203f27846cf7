#include "vqsp/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <boost/math/statistics/bivariate_statistics.hpp>
#include <boost/math/statistics/linear_regression.hpp>
#include <boost/math/statistics/univariate_statistics.hpp>

#include "vqsp/errors.hpp"

namespace vqsp {

Summary summarize(std::span<const double> values) {
    Summary s;
    if (values.empty()) {
        return s;
    }
    const std::vector<double> v(values.begin(), values.end());
    s.mean = boost::math::statistics::mean(v);
    if (v.size() > 1) {
        s.std = std::sqrt(boost::math::statistics::sample_variance(v));
    }
    return s;
}

LinearFit fit_line(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) {
        throw ValidationError("fit needs paired samples");
    }
    if (x.size() < 3) {
        throw ValidationError("fit needs at least three points");
    }
    const std::vector<double> xs(x.begin(), x.end());
    const std::vector<double> ys(y.begin(), y.end());
    if (std::all_of(xs.begin(), xs.end(), [&](double v) { return v == xs.front(); })) {
        throw ValidationError("fit needs at least two distinct x values");
    }
    const auto [c0, c1, r2] = boost::math::statistics::simple_ordinary_least_squares_with_R_squared(xs, ys);

    const double n = static_cast<double>(xs.size());
    const double x_mean = boost::math::statistics::mean(xs);
    double sxx = 0.0;
    double sse = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - x_mean) * (xs[i] - x_mean);
        const double r = ys[i] - (c0 + c1 * xs[i]);
        sse += r * r;
    }
    return LinearFit{c1, c0, std::sqrt(sse / (n - 2) / sxx), r2};
}

std::vector<double> ranks(std::span<const double> values) {
    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::vector<double> r(values.size());
    for (std::size_t i = 0; i < order.size();) {
        std::size_t j = i;
        while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]]) {
            ++j;
        }
        const double avg = (static_cast<double>(i + j) / 2.0) + 1.0;
        for (std::size_t k = i; k <= j; ++k) {
            r[order[k]] = avg;
        }
        i = j + 1;
    }
    return r;
}

double spearman(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) {
        throw ValidationError("correlation needs paired samples");
    }
    if (x.size() < 2) {
        return 0.0;
    }
    const auto rx = ranks(x);
    const auto ry = ranks(y);
    const auto constant = [](const std::vector<double> &v) {
        return std::all_of(v.begin(), v.end(), [&](double e) { return e == v.front(); });
    };
    if (constant(rx) || constant(ry)) {
        return 0.0;
    }
    return boost::math::statistics::correlation_coefficient(rx, ry);
}

} // namespace vqsp
