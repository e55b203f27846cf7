#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "vqsp/circuit.hpp"
#include "vqsp/noise.hpp"
#include "vqsp/targets.hpp"

namespace vqsp {

struct ExactMode {};

struct ShotsMode {
    std::uint64_t count = 10000;
    std::uint64_t seed = 0;
};

using EvaluationMode = std::variant<ExactMode, ShotsMode>;

/// Everything needed to evaluate p0(theta) = |<0|V^dagger U(theta)|0>|^2.
class CostContext {
  public:
    CostContext(Circuit ansatz, TargetUnitary target, EvaluationMode mode = ExactMode{});

    /// Readout noise and mitigation are only meaningful with sampled outcomes.
    CostContext &with_noise(ReadoutNoiseModel noise);
    CostContext &with_mitigation(const CalibrationMatrix &cal);

    [[nodiscard]] const Circuit &ansatz() const noexcept { return ansatz_; }
    [[nodiscard]] const TargetUnitary &target() const noexcept { return target_; }
    [[nodiscard]] const EvaluationMode &mode() const noexcept { return mode_; }
    [[nodiscard]] bool is_exact() const noexcept { return std::holds_alternative<ExactMode>(mode_); }
    [[nodiscard]] const std::optional<ReadoutNoiseModel> &noise() const noexcept { return noise_; }
    [[nodiscard]] const std::shared_ptr<const Mitigator> &mitigator() const noexcept { return mitigator_; }
    [[nodiscard]] const std::optional<CalibrationMatrix> &calibration() const noexcept { return calibration_; }

    /// Same ansatz, target, noise and mitigation, evaluated exactly.
    [[nodiscard]] CostContext exact() const;

  private:
    Circuit ansatz_;
    TargetUnitary target_;
    EvaluationMode mode_;
    std::optional<ReadoutNoiseModel> noise_;
    std::optional<CalibrationMatrix> calibration_;
    std::shared_ptr<const Mitigator> mitigator_;
};

/// p0 in [0, 1]. In shots mode the sample stream is keyed by (seed, stream),
/// so repeated calls with the same stream reproduce the same estimate.
double overlap_probability(const CostContext &ctx, std::span<const double> theta, std::uint64_t stream = 0);

/// Fubini-Study distance sqrt(1 - p0), with p0 clamped to [0, 1].
double cost_from_overlap(double p0);
double cost(const CostContext &ctx, std::span<const double> theta, std::uint64_t stream = 0);

/// Floor on the distance in the chain rule dC = -dp0 / (2 C).
inline constexpr double kCostFloor = 1e-6;

/// Parameter-shift derivative of p0 with respect to slot k. Single-qubit
/// rotations use the two-term +-pi/2 rule; controlled rotations (generator
/// spectrum {0, +-1/2}) use the four-term +-pi/2, +-3pi/2 rule.
double overlap_derivative(const CostContext &ctx, std::span<const double> theta, std::size_t k,
                          std::uint64_t stream = 0);

/// Gradient of p0.
std::vector<double> overlap_gradient(const CostContext &ctx, std::span<const double> theta, std::uint64_t stream = 0);

/// Gradient of the distance via the floored chain rule.
std::vector<double> gradient(const CostContext &ctx, std::span<const double> theta, std::uint64_t stream = 0);

/// d cost / d theta_k only.
double gradient_component(const CostContext &ctx, std::span<const double> theta, std::size_t k,
                          std::uint64_t stream = 0);

/// g_jk = Re(<d_j phi|d_k phi> - <d_j phi|phi><phi|d_k phi>) for
/// |phi> = U(theta)|0>, using exact statevector derivatives.
Eigen::MatrixXd fubini_study_metric(const Circuit &ansatz, std::span<const double> theta);
/// Throws UnsupportedModeError in shots mode.
Eigen::MatrixXd fubini_study_metric(const CostContext &ctx, std::span<const double> theta);

/// Var[d cost / d theta_k] = <x^2> - <x>^2 over `n_samples` parameter vectors
/// drawn uniformly from [0, 2 pi)^M, evaluated exactly.
double gradient_variance(const Circuit &ansatz, const TargetUnitary &target, std::size_t param_index,
                         std::size_t n_samples, std::uint64_t rng_seed);

/// Uniform [0, 2 pi) initial parameters.
std::vector<double> random_parameters(std::size_t n_params, Rng &rng);

} // namespace vqsp
