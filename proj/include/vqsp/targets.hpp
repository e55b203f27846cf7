#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "vqsp/circuit.hpp"
#include "vqsp/statevector.hpp"

namespace vqsp {

enum class TargetName { GHZ, W, AME3, Custom };

[[nodiscard]] std::string_view to_string(TargetName name);
[[nodiscard]] TargetName target_name_from_string(std::string_view name);

struct TargetState {
    TargetName name = TargetName::Custom;
    StateVector state{1};
    /// Squared norm of the amplitudes as given, before renormalization.
    double raw_norm_squared = 1.0;

    [[nodiscard]] std::size_t n_qubits() const noexcept { return state.n_qubits(); }
};

TargetState ghz_state(std::size_t n_qubits);
TargetState w_state(std::size_t n_qubits);

/// Three-qubit AME state with the rounded coefficients
/// 0.27|000> + 0.377|100> + 0.326|010> + 0.363|001> + 0.74 e^{-0.79 i pi}|111>,
/// renormalized to unit norm.
TargetState ame3_state();

/// Dispatches by name; AME3 requires n_qubits == 3.
TargetState make_target(TargetName name, std::size_t n_qubits);

/// Any amplitude list whose squared norm is within `tol` of 1; renormalized.
TargetState custom_state(std::vector<Complex> amplitudes, double tol = 1e-6);

/// Reads `index real imag` lines (blank lines and `#` comments skipped).
/// Unlisted indices are zero. Without `n_qubits` the register is the
/// smallest one holding the largest index (at least 1 qubit).
TargetState read_custom_target(std::istream &in, std::optional<std::size_t> n_qubits = std::nullopt);
TargetState load_custom_target(const std::string &path, std::optional<std::size_t> n_qubits = std::nullopt);

/// H on qubit 0, then CNOT 0 -> j for every j, each CNOT realized as H-CZ-H
/// on qubit j. Prepares the GHZ state from |0...0>.
Circuit ghz_circuit(std::size_t n_qubits);

/// Three-qubit W preparation: a weighted RY split on qubit 0, an
/// anti-controlled RY on qubit 1 and a doubly anti-controlled X on qubit 2.
/// Fixed angles are carried as bound parameters.
BoundCircuit w3_circuit();

/// Explicit preparation circuit for `name` at `n_qubits`, when one is provided.
std::optional<BoundCircuit> target_circuit(TargetName name, std::size_t n_qubits);

/// A target unitary V with V|0...0> = |psi>.
class TargetUnitary {
  public:
    enum class Mode { ExplicitCircuit, CompletedMatrix };

    static TargetUnitary from_circuit(BoundCircuit circuit);
    static TargetUnitary from_matrix(Eigen::MatrixXcd matrix);

    [[nodiscard]] Mode mode() const noexcept { return mode_; }
    [[nodiscard]] std::size_t n_qubits() const noexcept { return n_qubits_; }
    [[nodiscard]] const std::optional<BoundCircuit> &circuit() const noexcept { return circuit_; }
    [[nodiscard]] const std::optional<Eigen::MatrixXcd> &matrix() const noexcept { return matrix_; }

    /// V^dagger |phi>.
    [[nodiscard]] StateVector apply_adjoint(const StateVector &phi) const;
    /// <0...0| V^dagger |phi>, i.e. <psi|phi>.
    [[nodiscard]] Complex zero_amplitude(const StateVector &phi) const;
    /// V|0...0>.
    [[nodiscard]] StateVector prepared_state() const;
    /// Dense form of V (computed from the circuit when needed).
    [[nodiscard]] Eigen::MatrixXcd dense() const;

  private:
    TargetUnitary() = default;

    Mode mode_ = Mode::CompletedMatrix;
    std::size_t n_qubits_ = 0;
    std::optional<BoundCircuit> circuit_;
    std::optional<Eigen::MatrixXcd> matrix_;
    std::optional<BoundCircuit> adjoint_;
    std::optional<StateVector> first_column_;
};

/// Unitary whose column 0 is the target and whose remaining columns are the
/// Gram-Schmidt completion of the standard basis.
TargetUnitary completed_unitary(const TargetState &target);

} // namespace vqsp
