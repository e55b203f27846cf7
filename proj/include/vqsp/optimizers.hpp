#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "vqsp/cost.hpp"

namespace vqsp {

struct AdamConfig {
    double learning_rate = 0.1;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;

    void validate() const;
};

struct AdamState {
    std::vector<double> m;
    std::vector<double> v;
    std::size_t t = 0;
};

struct AdamStep {
    AdamState state;
    std::vector<double> theta;
};

/// One bias-corrected Adam update. An empty state is initialized to zeros.
AdamStep adam_step(const AdamConfig &config, AdamState state, std::span<const double> theta,
                   std::span<const double> grad);

struct QngConfig {
    double learning_rate = 0.1;
    /// Tikhonov shift added to the metric before solving.
    double regularization = 1e-3;

    void validate() const;
};

/// theta - lr * (metric + lambda I)^-1 grad, solved with a symmetric LDL^T
/// factorization. Throws NumericError if the solve is not finite.
std::vector<double> qng_step(const QngConfig &config, std::span<const double> theta, std::span<const double> grad,
                             const Eigen::MatrixXd &metric);

using OptimizerConfig = std::variant<AdamConfig, QngConfig>;

[[nodiscard]] std::string optimizer_name(const OptimizerConfig &config);

struct TrainOptions {
    std::size_t iterations = 100;
    /// Seeds the uniform [0, 2 pi) initial parameters.
    std::uint64_t seed = 0;
    /// Stop once the recorded cost drops below this value; off by default.
    std::optional<double> convergence_threshold;
    /// Starting point; drawn from `seed` when absent.
    std::optional<std::vector<double>> initial_theta;
};

struct TrainingTrace {
    /// Cost after each update, in the context's evaluation mode.
    std::vector<double> cost_history;
    std::vector<double> theta_initial;
    std::vector<double> theta_final;
    std::size_t iterations_run = 0;
    /// Exact distance at theta_final (equals the last cost in exact mode).
    double final_exact_cost = 1.0;
    double wall_time_s = 0.0;
    /// Set when a numeric failure stopped training early.
    std::optional<std::string> error;
    std::vector<std::string> warnings;

    bool operator==(const TrainingTrace &) const = default;

    [[nodiscard]] double final_cost() const { return cost_history.empty() ? 1.0 : cost_history.back(); }
};

/**
 * Runs the variational loop: per iteration, compute the cost gradient (plus
 * the metric for QNG), update theta, then record the cost at the new theta.
 *
 * In shots mode every evaluation draws from a stream keyed by the mode's
 * seed and the iteration index, so runs are reproducible. The metric is
 * only available exactly, so QNG in shots mode takes Adam steps at the QNG
 * learning rate and records a warning in the trace.
 *
 * A NumericError stops the loop; the trace up to that point is returned
 * with `error` set.
 */
TrainingTrace train(const CostContext &ctx, const OptimizerConfig &optimizer, const TrainOptions &options = {});

} // namespace vqsp
