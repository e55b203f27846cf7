#include "vqsp/circuit.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <sstream>

#include "vqsp/errors.hpp"

namespace vqsp {

namespace {

constexpr std::array<std::pair<GateKind, std::string_view>, 7> kNames{{
    {GateKind::RX, "RX"},
    {GateKind::RY, "RY"},
    {GateKind::RZ, "RZ"},
    {GateKind::H, "H"},
    {GateKind::MCZ, "MCZ"},
    {GateKind::CRX, "CRX"},
    {GateKind::CRZ, "CRZ"},
}};

Axis axis_of(GateKind kind) {
    switch (kind) {
    case GateKind::RX:
    case GateKind::CRX:
        return Axis::X;
    case GateKind::RY:
        return Axis::Y;
    case GateKind::RZ:
    case GateKind::CRZ:
        return Axis::Z;
    default:
        throw ValidationError("gate kind has no rotation axis");
    }
}

std::size_t parse_index(std::string_view s) {
    std::size_t value = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
        throw ValidationError("invalid integer '" + std::string(s) + "'");
    }
    return value;
}

} // namespace

std::string_view to_string(GateKind kind) {
    for (const auto &[k, name] : kNames) {
        if (k == kind) {
            return name;
        }
    }
    return "?";
}

GateKind gate_kind_from_string(std::string_view name) {
    for (const auto &[k, n] : kNames) {
        if (n == name) {
            return k;
        }
    }
    throw ValidationError("unknown gate kind '" + std::string(name) + "'");
}

bool is_parameterized(GateKind kind) { return kind != GateKind::H && kind != GateKind::MCZ; }

bool is_controlled_rotation(GateKind kind) { return kind == GateKind::CRX || kind == GateKind::CRZ; }

Circuit::Circuit(std::size_t n_qubits) : n_qubits_(n_qubits) {
    if (n_qubits < 1 || n_qubits > kMaxQubits) {
        throw CapacityError("circuit register must have 1.." + std::to_string(kMaxQubits) + " qubits");
    }
}

void Circuit::check_qubit(std::size_t q) const {
    if (q >= n_qubits_) {
        throw IndexError("qubit " + std::to_string(q) + " out of range for " + std::to_string(n_qubits_) +
                         "-qubit circuit");
    }
}

Circuit &Circuit::rotation(GateKind kind, std::size_t q) {
    return push(GateSpec{kind, {q}, n_params_});
}

Circuit &Circuit::h(std::size_t q) { return push(GateSpec{GateKind::H, {q}, std::nullopt}); }

Circuit &Circuit::mcz(std::vector<std::size_t> qubits) {
    return push(GateSpec{GateKind::MCZ, std::move(qubits), std::nullopt});
}

Circuit &Circuit::controlled(GateKind kind, std::size_t control, std::size_t target) {
    return push(GateSpec{kind, {control, target}, n_params_});
}

Circuit &Circuit::push(GateSpec gate) {
    for (auto q : gate.qubits) {
        check_qubit(q);
    }
    switch (gate.kind) {
    case GateKind::RX:
    case GateKind::RY:
    case GateKind::RZ:
    case GateKind::H:
        if (gate.qubits.size() != 1) {
            throw ValidationError(std::string(to_string(gate.kind)) + " acts on exactly one qubit");
        }
        break;
    case GateKind::MCZ: {
        if (gate.qubits.size() < 2) {
            throw ValidationError("MCZ needs at least two qubits");
        }
        auto sorted = gate.qubits;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
            throw IndexError("MCZ qubits must be distinct");
        }
        break;
    }
    case GateKind::CRX:
    case GateKind::CRZ:
        if (gate.qubits.size() != 2) {
            throw ValidationError(std::string(to_string(gate.kind)) + " acts on exactly two qubits");
        }
        if (gate.qubits[0] == gate.qubits[1]) {
            throw IndexError("control and target must differ");
        }
        break;
    }
    if (is_parameterized(gate.kind)) {
        if (gate.param_slot != n_params_) {
            throw ValidationError("parameter slots must be assigned contiguously in emission order");
        }
        ++n_params_;
    } else if (gate.param_slot) {
        throw ValidationError(std::string(to_string(gate.kind)) + " takes no parameter");
    }
    gates_.push_back(std::move(gate));
    return *this;
}

Circuit &Circuit::extend(const Circuit &other) {
    if (other.n_qubits_ != n_qubits_) {
        throw ValidationError("cannot extend a circuit with one of a different width");
    }
    for (auto gate : other.gates_) {
        if (gate.param_slot) {
            gate.param_slot = n_params_;
        }
        push(std::move(gate));
    }
    return *this;
}

BoundCircuit bind(Circuit circuit, std::vector<double> theta) {
    if (theta.size() != circuit.n_params()) {
        throw ValidationError("circuit has " + std::to_string(circuit.n_params()) + " parameters, got " +
                              std::to_string(theta.size()));
    }
    if (!std::all_of(theta.begin(), theta.end(), [](double t) { return std::isfinite(t); })) {
        throw ValidationError("parameters must be finite");
    }
    return BoundCircuit{std::move(circuit), std::move(theta)};
}

void apply_gate(const GateSpec &gate, std::span<const double> theta, StateVector &state) {
    switch (gate.kind) {
    case GateKind::RX:
    case GateKind::RY:
    case GateKind::RZ:
        state.rotate(axis_of(gate.kind), theta[*gate.param_slot], gate.qubits[0]);
        break;
    case GateKind::H:
        state.hadamard(gate.qubits[0]);
        break;
    case GateKind::MCZ:
        state.multi_controlled_z(gate.qubits);
        break;
    case GateKind::CRX:
    case GateKind::CRZ:
        state.controlled_rotate(gate.qubits[0], gate.qubits[1], axis_of(gate.kind), theta[*gate.param_slot]);
        break;
    }
}

void apply_gates(const Circuit &circuit, std::span<const double> theta, StateVector &state, std::size_t first,
                 std::size_t last) {
    const auto &gates = circuit.gates();
    for (std::size_t i = first; i < last; ++i) {
        apply_gate(gates[i], theta, state);
    }
}

void apply_generator(const GateSpec &gate, StateVector &state) {
    if (!is_parameterized(gate.kind)) {
        throw ValidationError("gate has no generator");
    }
    if (is_controlled_rotation(gate.kind)) {
        state.apply_generator(axis_of(gate.kind), gate.qubits[1], static_cast<std::ptrdiff_t>(gate.qubits[0]));
    } else {
        state.apply_generator(axis_of(gate.kind), gate.qubits[0]);
    }
}

StateVector execute(const BoundCircuit &bound, const StateVector &input) {
    if (input.n_qubits() != bound.circuit.n_qubits()) {
        throw ValidationError("state has " + std::to_string(input.n_qubits()) + " qubits, circuit expects " +
                              std::to_string(bound.circuit.n_qubits()));
    }
    if (bound.theta.size() != bound.circuit.n_params()) {
        throw ValidationError("bound parameter vector has the wrong length");
    }
    StateVector out = input;
    apply_gates(bound.circuit, bound.theta, out, 0, bound.circuit.size());
    return out;
}

StateVector prepare(const Circuit &circuit, std::span<const double> theta) {
    if (theta.size() != circuit.n_params()) {
        throw ValidationError("circuit has " + std::to_string(circuit.n_params()) + " parameters, got " +
                              std::to_string(theta.size()));
    }
    StateVector out(circuit.n_qubits());
    apply_gates(circuit, theta, out, 0, circuit.size());
    return out;
}

BoundCircuit adjoint(const BoundCircuit &bound) {
    // Reversing the gates breaks emission-order slot numbering, so slots are
    // renumbered and the angles permuted to match.
    Circuit reversed(bound.circuit.n_qubits());
    std::vector<double> theta;
    theta.reserve(bound.theta.size());
    const auto &gates = bound.circuit.gates();
    for (auto it = gates.rbegin(); it != gates.rend(); ++it) {
        GateSpec g = *it;
        if (g.param_slot) {
            theta.push_back(-bound.theta[*g.param_slot]);
            g.param_slot = reversed.n_params();
        }
        reversed.push(std::move(g));
    }
    return BoundCircuit{std::move(reversed), std::move(theta)};
}

std::size_t dag_depth(const Circuit &circuit) {
    std::vector<std::size_t> frontier(circuit.n_qubits(), 0);
    std::size_t depth = 0;
    for (const auto &gate : circuit.gates()) {
        std::size_t layer = 0;
        for (auto q : gate.qubits) {
            layer = std::max(layer, frontier[q]);
        }
        ++layer;
        for (auto q : gate.qubits) {
            frontier[q] = layer;
        }
        depth = std::max(depth, layer);
    }
    return depth;
}

Eigen::MatrixXcd dense_unitary(const BoundCircuit &bound) {
    const std::size_t n = bound.circuit.n_qubits();
    if (n > kDenseUnitaryMaxQubits) {
        throw CapacityError("dense unitary limited to " + std::to_string(kDenseUnitaryMaxQubits) + " qubits");
    }
    const std::size_t dim = std::size_t{1} << n;
    Eigen::MatrixXcd u(dim, dim);
    for (std::size_t col = 0; col < dim; ++col) {
        StateVector s = StateVector::basis(n, col);
        apply_gates(bound.circuit, bound.theta, s, 0, bound.circuit.size());
        for (std::size_t row = 0; row < dim; ++row) {
            u(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) = s[row];
        }
    }
    return u;
}

std::string to_text(const Circuit &circuit) {
    std::ostringstream os;
    os << "# qubits=" << circuit.n_qubits() << '\n';
    for (const auto &gate : circuit.gates()) {
        os << to_string(gate.kind) << ' ';
        for (std::size_t i = 0; i < gate.qubits.size(); ++i) {
            os << (i ? "," : "") << gate.qubits[i];
        }
        if (gate.param_slot) {
            os << " slot=" << *gate.param_slot;
        }
        os << '\n';
    }
    return os.str();
}

Circuit circuit_from_text(std::string_view text) {
    std::optional<std::size_t> declared;
    std::vector<GateSpec> parsed;
    std::size_t max_qubit = 0;

    std::istringstream is{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        std::istringstream ls(line);
        std::string kind_tok;
        if (!(ls >> kind_tok)) {
            continue;
        }
        if (kind_tok.front() == '#') {
            auto pos = line.find("qubits=");
            if (pos != std::string::npos && !declared) {
                declared = parse_index(std::string_view(line).substr(pos + 7));
            }
            continue;
        }
        try {
            GateSpec gate{gate_kind_from_string(kind_tok), {}, std::nullopt};
            std::string qubit_tok;
            if (!(ls >> qubit_tok)) {
                throw ValidationError("missing qubit list");
            }
            std::string_view rest = qubit_tok;
            while (!rest.empty()) {
                auto comma = rest.find(',');
                gate.qubits.push_back(parse_index(rest.substr(0, comma)));
                max_qubit = std::max(max_qubit, gate.qubits.back());
                rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
            }
            std::string slot_tok;
            if (ls >> slot_tok) {
                if (slot_tok.rfind("slot=", 0) != 0) {
                    throw ValidationError("expected slot=k, got '" + slot_tok + "'");
                }
                gate.param_slot = parse_index(std::string_view(slot_tok).substr(5));
            }
            std::string extra;
            if (ls >> extra) {
                throw ValidationError("trailing token '" + extra + "'");
            }
            parsed.push_back(std::move(gate));
        } catch (const ValidationError &e) {
            throw ValidationError("line " + std::to_string(line_no) + ": " + e.what());
        }
    }

    Circuit circuit(declared.value_or(max_qubit + 1));
    for (auto &gate : parsed) {
        circuit.push(std::move(gate));
    }
    return circuit;
}

} // namespace vqsp
