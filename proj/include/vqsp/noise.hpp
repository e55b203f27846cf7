#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "vqsp/statevector.hpp"

namespace vqsp {

/// Independent bit-flip confusion on every measured qubit:
/// P(read 1 | 0) = P(read 0 | 1) = epsilon.
struct ReadoutNoiseModel {
    double epsilon = 0.0;
    /// Optional per-qubit override; empty means `epsilon` everywhere.
    std::vector<double> per_qubit;

    [[nodiscard]] double rate(std::size_t qubit) const;
    /// Throws ValidationError unless every rate lies in [0, 0.5).
    void validate(std::size_t n_qubits) const;
};

/// Observed distribution p' = (C (x) ... (x) C) p with C = [[1-e, e], [e, 1-e]].
ProbabilityVector apply_readout_noise(const ProbabilityVector &probs, const ReadoutNoiseModel &model);

/// Column j holds the response distribution when basis state j is prepared.
struct CalibrationMatrix {
    std::size_t n_qubits = 0;
    Eigen::MatrixXd m;

    /// Columns sum to 1 within tol and entries are nonnegative.
    void validate(double tol = 1e-9) const;
};

/// Empirical calibration: each basis state is passed through the channel
/// and sampled `shots` times. Deterministic for a fixed seed.
CalibrationMatrix build_calibration_matrix(std::size_t n_qubits, const ReadoutNoiseModel &model,
                                           std::uint64_t shots, std::uint64_t seed);

/// The exact channel matrix (infinite-shot limit of the above).
CalibrationMatrix analytic_calibration_matrix(std::size_t n_qubits, const ReadoutNoiseModel &model);

inline constexpr double kMaxConditionNumber = 1e8;

/// Factorized calibration matrix, reusable across many mitigations.
class Mitigator {
  public:
    /// Throws MitigationError when the condition number exceeds kMaxConditionNumber.
    explicit Mitigator(const CalibrationMatrix &cal);

    [[nodiscard]] double condition_number() const noexcept { return condition_; }
    [[nodiscard]] std::size_t n_qubits() const noexcept { return n_qubits_; }

    /// Solves M x = noisy, clips negative entries to 0 and renormalizes.
    [[nodiscard]] ProbabilityVector apply(const ProbabilityVector &noisy) const;

  private:
    std::size_t n_qubits_;
    double condition_;
    Eigen::PartialPivLU<Eigen::MatrixXd> lu_;
};

ProbabilityVector mitigate(const CalibrationMatrix &cal, const ProbabilityVector &noisy);

/// Plain-text export: `# calibration n_qubits=N` then 2^N rows of 2^N
/// decimal values, row-major, space-separated.
void write_calibration(std::ostream &out, const CalibrationMatrix &cal);
CalibrationMatrix read_calibration(std::istream &in);
void save_calibration(const std::string &path, const CalibrationMatrix &cal);
CalibrationMatrix load_calibration(const std::string &path);

} // namespace vqsp
