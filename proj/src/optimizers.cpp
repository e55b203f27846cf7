#include "vqsp/optimizers.hpp"

#include <chrono>
#include <cmath>

#include "vqsp/errors.hpp"
#include "vqsp/rng.hpp"

namespace vqsp {

void AdamConfig::validate() const {
    if (!(learning_rate > 0.0)) {
        throw ValidationError("Adam learning rate must be positive");
    }
    if (!(beta1 >= 0.0 && beta1 < 1.0) || !(beta2 >= 0.0 && beta2 < 1.0)) {
        throw ValidationError("Adam moment decay rates must lie in [0, 1)");
    }
    if (!(epsilon > 0.0)) {
        throw ValidationError("Adam epsilon must be positive");
    }
}

AdamStep adam_step(const AdamConfig &config, AdamState state, std::span<const double> theta,
                   std::span<const double> grad) {
    if (theta.size() != grad.size()) {
        throw ValidationError("parameter and gradient lengths differ");
    }
    if (state.m.empty() && state.v.empty()) {
        state.m.assign(theta.size(), 0.0);
        state.v.assign(theta.size(), 0.0);
    }
    if (state.m.size() != theta.size() || state.v.size() != theta.size()) {
        throw ValidationError("Adam state does not match the parameter count");
    }
    ++state.t;
    const double c1 = 1.0 - std::pow(config.beta1, static_cast<double>(state.t));
    const double c2 = 1.0 - std::pow(config.beta2, static_cast<double>(state.t));
    std::vector<double> next(theta.begin(), theta.end());
    for (std::size_t i = 0; i < theta.size(); ++i) {
        state.m[i] = config.beta1 * state.m[i] + (1.0 - config.beta1) * grad[i];
        state.v[i] = config.beta2 * state.v[i] + (1.0 - config.beta2) * grad[i] * grad[i];
        const double m_hat = state.m[i] / c1;
        const double v_hat = state.v[i] / c2;
        next[i] -= config.learning_rate * m_hat / (std::sqrt(v_hat) + config.epsilon);
    }
    return AdamStep{std::move(state), std::move(next)};
}

void QngConfig::validate() const {
    if (!(learning_rate > 0.0)) {
        throw ValidationError("QNG learning rate must be positive");
    }
    if (!(regularization > 0.0)) {
        throw ValidationError("QNG regularization must be positive");
    }
}

std::vector<double> qng_step(const QngConfig &config, std::span<const double> theta, std::span<const double> grad,
                             const Eigen::MatrixXd &metric) {
    const auto m = static_cast<Eigen::Index>(theta.size());
    if (grad.size() != theta.size() || metric.rows() != m || metric.cols() != m) {
        throw ValidationError("QNG dimensions disagree");
    }
    if (!(config.regularization >= 0.0)) {
        throw ValidationError("QNG regularization must be nonnegative");
    }
    const Eigen::MatrixXd a = metric + config.regularization * Eigen::MatrixXd::Identity(m, m);
    Eigen::Map<const Eigen::VectorXd> g(grad.data(), m);
    // LDLT treats a NaN pivot as zero and would return a finite direction.
    if (!a.allFinite() || !g.allFinite()) {
        throw NumericError("QNG inputs are not finite");
    }
    const Eigen::LDLT<Eigen::MatrixXd> ldlt(a);
    const Eigen::VectorXd direction = ldlt.solve(g);
    if (ldlt.info() != Eigen::Success || !direction.allFinite()) {
        throw NumericError("QNG linear solve failed");
    }
    std::vector<double> next(theta.begin(), theta.end());
    for (Eigen::Index i = 0; i < m; ++i) {
        next[static_cast<std::size_t>(i)] -= config.learning_rate * direction(i);
    }
    return next;
}

std::string optimizer_name(const OptimizerConfig &config) {
    return std::holds_alternative<AdamConfig>(config) ? "adam" : "qng";
}

TrainingTrace train(const CostContext &ctx, const OptimizerConfig &optimizer, const TrainOptions &options) {
    std::visit([](const auto &cfg) { cfg.validate(); }, optimizer);
    const auto start = std::chrono::steady_clock::now();
    const std::size_t m = ctx.ansatz().n_params();

    TrainingTrace trace;
    if (options.initial_theta) {
        if (options.initial_theta->size() != m) {
            throw ValidationError("initial parameters do not match the ansatz");
        }
        trace.theta_initial = *options.initial_theta;
    } else {
        auto rng = make_rng({options.seed});
        trace.theta_initial = random_parameters(m, rng);
    }
    std::vector<double> theta = trace.theta_initial;
    trace.cost_history.reserve(options.iterations);

    AdamState adam;
    AdamConfig fallback;
    const auto *qng_cfg = std::get_if<QngConfig>(&optimizer);
    if (qng_cfg && !ctx.is_exact()) {
        fallback.learning_rate = qng_cfg->learning_rate;
        trace.warnings.push_back("QNG needs the exact metric; shots mode uses Adam updates instead");
    }
    const AdamConfig *adam_cfg = std::get_if<AdamConfig>(&optimizer);
    if (qng_cfg && !ctx.is_exact()) {
        adam_cfg = &fallback;
    }
    // Gradient evaluations use stream 2t and recorded costs 2t+1 so the two
    // never share samples.
    try {
        for (std::size_t t = 0; t < options.iterations; ++t) {
            const auto grad = gradient(ctx, theta, 2 * t);
            for (double g : grad) {
                if (!std::isfinite(g)) {
                    throw NumericError("non-finite gradient at iteration " + std::to_string(t));
                }
            }
            if (adam_cfg) {
                auto step = adam_step(*adam_cfg, std::move(adam), theta, grad);
                adam = std::move(step.state);
                theta = std::move(step.theta);
            } else {
                theta = qng_step(*qng_cfg, theta, grad, fubini_study_metric(ctx, theta));
            }
            const double c = cost(ctx, theta, 2 * t + 1);
            trace.cost_history.push_back(c);
            ++trace.iterations_run;
            if (options.convergence_threshold && c < *options.convergence_threshold) {
                break;
            }
        }
    } catch (const NumericError &e) {
        trace.error = e.what();
    }
    trace.theta_final = theta;
    trace.final_exact_cost = cost(ctx.exact(), theta);
    trace.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return trace;
}

} // namespace vqsp
