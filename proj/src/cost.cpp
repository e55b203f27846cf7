#include "vqsp/cost.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "vqsp/errors.hpp"
#include "vqsp/rng.hpp"

namespace vqsp {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2;
constexpr double kTwoPi = 2 * std::numbers::pi;

// Four-term shift coefficients for generators with spectrum {0, +-1/2}.
const double kShiftNear = (std::numbers::sqrt2 + 1) / (4 * std::numbers::sqrt2);
const double kShiftFar = (std::numbers::sqrt2 - 1) / (4 * std::numbers::sqrt2);

void check_theta(const CostContext &ctx, std::span<const double> theta) {
    if (theta.size() != ctx.ansatz().n_params()) {
        throw ValidationError("ansatz has " + std::to_string(ctx.ansatz().n_params()) + " parameters, got " +
                              std::to_string(theta.size()));
    }
}

double sampled_overlap(const CostContext &ctx, const StateVector &phi, Rng &rng) {
    const auto &shots = std::get<ShotsMode>(ctx.mode());
    ProbabilityVector probs = probabilities(ctx.target().apply_adjoint(phi));
    if (ctx.noise()) {
        probs = apply_readout_noise(probs, *ctx.noise());
    }
    ProbabilityVector freq = sample_counts(probs, shots.count, rng).frequencies(probs.n_qubits);
    if (ctx.mitigator()) {
        freq = ctx.mitigator()->apply(freq);
    }
    return freq.probs[0];
}

double overlap_with_rng(const CostContext &ctx, std::span<const double> theta, Rng *rng) {
    const StateVector phi = prepare(ctx.ansatz(), theta);
    if (ctx.is_exact()) {
        return std::clamp(std::norm(ctx.target().zero_amplitude(phi)), 0.0, 1.0);
    }
    return sampled_overlap(ctx, phi, *rng);
}

std::uint64_t shots_seed(const CostContext &ctx) {
    const auto *shots = std::get_if<ShotsMode>(&ctx.mode());
    return shots ? shots->seed : 0;
}

bool slot_is_controlled(const Circuit &circuit, std::size_t k) {
    for (const auto &gate : circuit.gates()) {
        if (gate.param_slot == k) {
            return is_controlled_rotation(gate.kind);
        }
    }
    throw IndexError("parameter slot " + std::to_string(k) + " not present in circuit");
}

} // namespace

CostContext::CostContext(Circuit ansatz, TargetUnitary target, EvaluationMode mode)
    : ansatz_(std::move(ansatz)), target_(std::move(target)), mode_(mode) {
    if (ansatz_.n_qubits() != target_.n_qubits()) {
        throw ValidationError("ansatz acts on " + std::to_string(ansatz_.n_qubits()) + " qubits, target on " +
                              std::to_string(target_.n_qubits()));
    }
    if (const auto *shots = std::get_if<ShotsMode>(&mode_); shots && shots->count == 0) {
        throw ValidationError("shots mode needs at least one shot");
    }
}

CostContext &CostContext::with_noise(ReadoutNoiseModel noise) {
    if (is_exact()) {
        throw ValidationError("readout noise requires shots mode");
    }
    noise.validate(ansatz_.n_qubits());
    noise_ = std::move(noise);
    return *this;
}

CostContext &CostContext::with_mitigation(const CalibrationMatrix &cal) {
    if (is_exact()) {
        throw ValidationError("mitigation requires shots mode");
    }
    if (cal.n_qubits != ansatz_.n_qubits()) {
        throw ValidationError("calibration matrix size does not match the register");
    }
    mitigator_ = std::make_shared<const Mitigator>(cal);
    calibration_ = cal;
    return *this;
}

CostContext CostContext::exact() const { return CostContext(ansatz_, target_, ExactMode{}); }

double overlap_probability(const CostContext &ctx, std::span<const double> theta, std::uint64_t stream) {
    check_theta(ctx, theta);
    if (ctx.is_exact()) {
        return overlap_with_rng(ctx, theta, nullptr);
    }
    auto rng = make_rng({shots_seed(ctx), stream});
    return overlap_with_rng(ctx, theta, &rng);
}

double cost_from_overlap(double p0) { return std::sqrt(1.0 - std::clamp(p0, 0.0, 1.0)); }

double cost(const CostContext &ctx, std::span<const double> theta, std::uint64_t stream) {
    return cost_from_overlap(overlap_probability(ctx, theta, stream));
}

double overlap_derivative(const CostContext &ctx, std::span<const double> theta, std::size_t k,
                          std::uint64_t stream) {
    check_theta(ctx, theta);
    if (k >= theta.size()) {
        throw IndexError("parameter index " + std::to_string(k) + " out of range");
    }
    std::vector<double> shifted(theta.begin(), theta.end());
    const std::uint64_t seed = shots_seed(ctx);
    // Shift codes 0..3 key independent sample streams per shifted circuit.
    auto eval = [&](double shift, std::uint64_t code) {
        shifted[k] = theta[k] + shift;
        if (ctx.is_exact()) {
            return overlap_with_rng(ctx, shifted, nullptr);
        }
        auto rng = make_rng({seed, stream, k, code});
        return overlap_with_rng(ctx, shifted, &rng);
    };
    if (!slot_is_controlled(ctx.ansatz(), k)) {
        return (eval(kHalfPi, 0) - eval(-kHalfPi, 1)) / 2;
    }
    const double near = eval(kHalfPi, 0) - eval(-kHalfPi, 1);
    const double far = eval(3 * kHalfPi, 2) - eval(-3 * kHalfPi, 3);
    return kShiftNear * near - kShiftFar * far;
}

std::vector<double> overlap_gradient(const CostContext &ctx, std::span<const double> theta, std::uint64_t stream) {
    check_theta(ctx, theta);
    std::vector<double> grad(theta.size());
    for (std::size_t k = 0; k < theta.size(); ++k) {
        grad[k] = overlap_derivative(ctx, theta, k, stream);
    }
    return grad;
}

std::vector<double> gradient(const CostContext &ctx, std::span<const double> theta, std::uint64_t stream) {
    auto grad = overlap_gradient(ctx, theta, stream);
    const double c = std::max(cost(ctx, theta, stream), kCostFloor);
    for (auto &g : grad) {
        g = -g / (2 * c);
    }
    return grad;
}

double gradient_component(const CostContext &ctx, std::span<const double> theta, std::size_t k,
                          std::uint64_t stream) {
    const double dp = overlap_derivative(ctx, theta, k, stream);
    return -dp / (2 * std::max(cost(ctx, theta, stream), kCostFloor));
}

Eigen::MatrixXd fubini_study_metric(const Circuit &ansatz, std::span<const double> theta) {
    if (theta.size() != ansatz.n_params()) {
        throw ValidationError("metric needs one angle per ansatz parameter");
    }
    const std::size_t m = ansatz.n_params();
    const auto &gates = ansatz.gates();

    StateVector prefix(ansatz.n_qubits());
    std::vector<StateVector> derivs(m, StateVector(ansatz.n_qubits()));
    for (std::size_t g = 0; g < gates.size(); ++g) {
        apply_gate(gates[g], theta, prefix);
        if (!gates[g].param_slot) {
            continue;
        }
        StateVector d = prefix;
        apply_generator(gates[g], d);
        apply_gates(ansatz, theta, d, g + 1, gates.size());
        derivs[*gates[g].param_slot] = std::move(d);
    }
    const StateVector &phi = prefix;

    std::vector<Complex> berry(m);
    for (std::size_t k = 0; k < m; ++k) {
        berry[k] = inner_product(phi, derivs[k]);
    }
    Eigen::MatrixXd g(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
    for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t k = j; k < m; ++k) {
            const Complex v = inner_product(derivs[j], derivs[k]) - std::conj(berry[j]) * berry[k];
            g(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) = v.real();
            g(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(j)) = v.real();
        }
    }
    return g;
}

Eigen::MatrixXd fubini_study_metric(const CostContext &ctx, std::span<const double> theta) {
    if (!ctx.is_exact()) {
        throw UnsupportedModeError("the Fubini-Study metric is only available in exact mode");
    }
    return fubini_study_metric(ctx.ansatz(), theta);
}

std::vector<double> random_parameters(std::size_t n_params, Rng &rng) {
    std::uniform_real_distribution<double> angle(0.0, kTwoPi);
    std::vector<double> theta(n_params);
    for (auto &t : theta) {
        t = angle(rng);
    }
    return theta;
}

double gradient_variance(const Circuit &ansatz, const TargetUnitary &target, std::size_t param_index,
                         std::size_t n_samples, std::uint64_t rng_seed) {
    if (n_samples < 2) {
        throw ValidationError("gradient variance needs at least 2 samples");
    }
    if (param_index >= ansatz.n_params()) {
        throw IndexError("parameter index " + std::to_string(param_index) + " out of range");
    }
    const CostContext ctx(ansatz, target, ExactMode{});
    auto rng = make_rng({rng_seed});
    std::vector<double> samples(n_samples);
    for (auto &d : samples) {
        const auto theta = random_parameters(ansatz.n_params(), rng);
        d = gradient_component(ctx, theta, param_index);
    }
    const double n = static_cast<double>(n_samples);
    double mean = 0.0;
    for (double d : samples) {
        mean += d;
    }
    mean /= n;
    double var = 0.0;
    for (double d : samples) {
        var += (d - mean) * (d - mean);
    }
    return var / n;
}

} // namespace vqsp
