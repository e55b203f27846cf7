#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "vqsp/statevector.hpp"

namespace vqsp {

enum class GateKind { RX, RY, RZ, H, MCZ, CRX, CRZ };

[[nodiscard]] std::string_view to_string(GateKind kind);
[[nodiscard]] GateKind gate_kind_from_string(std::string_view name);
[[nodiscard]] bool is_parameterized(GateKind kind);
[[nodiscard]] bool is_controlled_rotation(GateKind kind);

struct GateSpec {
    GateKind kind;
    /// Rotations and H: {target}. MCZ: the full edge. CRX/CRZ: {control, target}.
    std::vector<std::size_t> qubits;
    std::optional<std::size_t> param_slot;

    bool operator==(const GateSpec &) const = default;
};

/// Ordered gate list over a fixed register. Parameter slots are assigned in
/// emission order, so they always form the contiguous range 0..n_params-1.
class Circuit {
  public:
    explicit Circuit(std::size_t n_qubits = 1);

    [[nodiscard]] std::size_t n_qubits() const noexcept { return n_qubits_; }
    [[nodiscard]] std::size_t n_params() const noexcept { return n_params_; }
    [[nodiscard]] const std::vector<GateSpec> &gates() const noexcept { return gates_; }
    [[nodiscard]] std::size_t size() const noexcept { return gates_.size(); }
    [[nodiscard]] bool empty() const noexcept { return gates_.empty(); }

    Circuit &rx(std::size_t q) { return rotation(GateKind::RX, q); }
    Circuit &ry(std::size_t q) { return rotation(GateKind::RY, q); }
    Circuit &rz(std::size_t q) { return rotation(GateKind::RZ, q); }
    Circuit &h(std::size_t q);
    Circuit &mcz(std::vector<std::size_t> qubits);
    Circuit &crx(std::size_t control, std::size_t target) { return controlled(GateKind::CRX, control, target); }
    Circuit &crz(std::size_t control, std::size_t target) { return controlled(GateKind::CRZ, control, target); }

    /// Appends `other`, renumbering its slots after this circuit's.
    Circuit &extend(const Circuit &other);

    /// Appends a gate whose slot (if any) must equal n_params(); used by
    /// the text parser and by adjoint construction.
    Circuit &push(GateSpec gate);

    bool operator==(const Circuit &) const = default;

  private:
    Circuit &rotation(GateKind kind, std::size_t q);
    Circuit &controlled(GateKind kind, std::size_t control, std::size_t target);
    void check_qubit(std::size_t q) const;

    std::size_t n_qubits_;
    std::size_t n_params_ = 0;
    std::vector<GateSpec> gates_;
};

/// A circuit together with one angle per parameter slot.
struct BoundCircuit {
    Circuit circuit;
    std::vector<double> theta;
};

BoundCircuit bind(Circuit circuit, std::vector<double> theta);

/// Applies one gate in place. `theta` is the full parameter vector.
void apply_gate(const GateSpec &gate, std::span<const double> theta, StateVector &state);

/// Applies gates [first, last) of `circuit` in place.
void apply_gates(const Circuit &circuit, std::span<const double> theta, StateVector &state, std::size_t first,
                 std::size_t last);

/// Replaces `state` by dG/dangle * G^-1 applied to it, for the parameterized
/// gate `gate`: i.e. multiplies by (-i/2) times the gate's generator.
void apply_generator(const GateSpec &gate, StateVector &state);

/// Runs every gate of `bound` on a copy of `input`.
StateVector execute(const BoundCircuit &bound, const StateVector &input);

/// Runs `circuit` at `theta` starting from |0...0>.
StateVector prepare(const Circuit &circuit, std::span<const double> theta);

/// Reversed gate order with every angle negated.
BoundCircuit adjoint(const BoundCircuit &bound);

/// Number of ASAP layers when every gate costs one layer on all qubits it touches.
std::size_t dag_depth(const Circuit &circuit);

inline constexpr std::size_t kDenseUnitaryMaxQubits = 10;

/// Column b is execute(bound, |b>).
Eigen::MatrixXcd dense_unitary(const BoundCircuit &bound);

/// One gate per line: `KIND q0[,q1,...] [slot=k]`, preceded by a `# qubits=N` header.
std::string to_text(const Circuit &circuit);

/// Parses `to_text` output. Blank lines and other `#` comments are ignored;
/// without a header the register size is inferred from the largest index.
Circuit circuit_from_text(std::string_view text);

} // namespace vqsp
