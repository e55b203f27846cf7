#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "vqsp/rng.hpp"

namespace vqsp {

using Complex = std::complex<double>;

/// Largest register the dense simulator will allocate.
inline constexpr std::size_t kMaxQubits = 20;

enum class Axis { X, Y, Z };

/**
 * Dense N-qubit pure state.
 *
 * Basis index b is read with qubit 0 as the most significant bit, so for
 * three qubits |q0 q1 q2> = |110> is index 6. Every routine in the library
 * (targets, calibration matrices, shot counts) uses this ordering.
 *
 * Gate methods mutate in place; the free functions below return a copy.
 */
class StateVector {
  public:
    /// |0...0> on n_qubits qubits; throws CapacityError outside [1, kMaxQubits].
    explicit StateVector(std::size_t n_qubits);

    /// Takes ownership of an amplitude array whose length must be a power of two.
    static StateVector from_amplitudes(std::vector<Complex> amplitudes);

    /// Computational basis state |index>.
    static StateVector basis(std::size_t n_qubits, std::size_t index);

    [[nodiscard]] std::size_t n_qubits() const noexcept { return n_qubits_; }
    [[nodiscard]] std::size_t dim() const noexcept { return amplitudes_.size(); }
    [[nodiscard]] std::span<const Complex> amplitudes() const noexcept { return amplitudes_; }
    [[nodiscard]] std::span<Complex> amplitudes() noexcept { return amplitudes_; }
    [[nodiscard]] const Complex &operator[](std::size_t i) const { return amplitudes_[i]; }
    [[nodiscard]] Complex &operator[](std::size_t i) { return amplitudes_[i]; }

    [[nodiscard]] double norm_squared() const noexcept;
    void normalize();

    /// exp(-i angle/2 sigma_axis) on `qubit`.
    void rotate(Axis axis, double angle, std::size_t qubit);
    void hadamard(std::size_t qubit);
    /// Negates every amplitude whose bits are all 1 on `qubits` (k >= 2, distinct).
    void multi_controlled_z(std::span<const std::size_t> qubits);
    /// Rotation on `target` restricted to the subspace where `control` is 1.
    void controlled_rotate(std::size_t control, std::size_t target, Axis axis, double angle);

    /// Multiplies by (-i/2) sigma_axis on `qubit`, optionally projected onto
    /// control = 1. This is d/dangle of the matching rotation with the
    /// rotation itself factored out; the result is not normalized.
    void apply_generator(Axis axis, std::size_t qubit, std::ptrdiff_t control = -1);

    /// Bit mask of `qubit` inside a basis index.
    [[nodiscard]] std::size_t mask(std::size_t qubit) const { return std::size_t{1} << (n_qubits_ - 1 - qubit); }

  private:
    StateVector(std::size_t n_qubits, std::vector<Complex> amplitudes);
    void check_qubit(std::size_t qubit) const;
    void apply_2x2(std::size_t qubit, const Complex (&m)[2][2], std::size_t control_mask);

    std::size_t n_qubits_;
    std::vector<Complex> amplitudes_;
};

/// Outcome distribution over 2^n basis indices.
struct ProbabilityVector {
    std::size_t n_qubits = 0;
    std::vector<double> probs;

    /// Throws ValidationError unless entries are finite, >= -tol and sum to 1 within tol.
    void validate(double tol = 1e-9) const;
};

struct ShotCounts {
    std::map<std::uint64_t, std::uint64_t> counts;
    std::uint64_t total_shots = 0;

    [[nodiscard]] std::uint64_t count(std::uint64_t index) const;
    /// Empirical frequencies as a dense vector over 2^n_qubits outcomes.
    [[nodiscard]] ProbabilityVector frequencies(std::size_t n_qubits) const;
};

StateVector new_zero_state(std::size_t n_qubits);
StateVector apply_single_qubit_rotation(StateVector state, Axis axis, double angle, std::size_t qubit);
StateVector apply_multi_controlled_z(StateVector state, std::span<const std::size_t> qubits);
StateVector apply_controlled_rotation(StateVector state, std::size_t control, std::size_t target, Axis axis,
                                      double angle);

ProbabilityVector probabilities(const StateVector &state);

/// Multinomial sample of `shots` outcomes drawn from `probs`.
ShotCounts sample_counts(const ProbabilityVector &probs, std::uint64_t shots, Rng &rng);
ShotCounts sample_counts(const ProbabilityVector &probs, std::uint64_t shots, std::uint64_t rng_seed);

/// <a|b>, conjugate-linear in `a`.
Complex inner_product(const StateVector &a, const StateVector &b);

/// |<a|b>|^2; the only way states are compared (global phase is irrelevant).
double fidelity(const StateVector &a, const StateVector &b);

} // namespace vqsp
