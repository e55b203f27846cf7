#include "vqsp/targets.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "vqsp/errors.hpp"

namespace vqsp {

namespace {

constexpr double kPi = std::numbers::pi;

void require_at_least_two(std::size_t n, std::string_view what) {
    if (n < 2) {
        throw ValidationError(std::string(what) + " state needs at least 2 qubits");
    }
}

TargetState normalized(TargetName name, std::vector<Complex> amps) {
    double sq = 0.0;
    for (const auto &a : amps) {
        sq += std::norm(a);
    }
    auto state = StateVector::from_amplitudes(std::move(amps));
    state.normalize();
    return TargetState{name, std::move(state), sq};
}

} // namespace

std::string_view to_string(TargetName name) {
    switch (name) {
    case TargetName::GHZ:
        return "ghz";
    case TargetName::W:
        return "w";
    case TargetName::AME3:
        return "ame";
    case TargetName::Custom:
        return "custom";
    }
    return "?";
}

TargetName target_name_from_string(std::string_view name) {
    std::string lower;
    for (char c : name) {
        lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
    if (lower == "ghz") {
        return TargetName::GHZ;
    }
    if (lower == "w") {
        return TargetName::W;
    }
    if (lower == "ame" || lower == "ame3") {
        return TargetName::AME3;
    }
    if (lower == "custom") {
        return TargetName::Custom;
    }
    throw ValidationError("unknown target '" + std::string(name) + "' (expected ghz, w, ame or custom)");
}

TargetState ghz_state(std::size_t n_qubits) {
    require_at_least_two(n_qubits, "GHZ");
    StateVector s(n_qubits);
    const double r = 1.0 / std::sqrt(2.0);
    s[0] = r;
    s[s.dim() - 1] = r;
    return TargetState{TargetName::GHZ, std::move(s), 1.0};
}

TargetState w_state(std::size_t n_qubits) {
    require_at_least_two(n_qubits, "W");
    StateVector s(n_qubits);
    s[0] = 0.0;
    const double r = 1.0 / std::sqrt(static_cast<double>(n_qubits));
    for (std::size_t q = 0; q < n_qubits; ++q) {
        s[s.mask(q)] = r;
    }
    return TargetState{TargetName::W, std::move(s), 1.0};
}

TargetState ame3_state() {
    std::vector<Complex> amps(8, Complex{0.0, 0.0});
    amps[0b000] = 0.27;
    amps[0b100] = 0.377;
    amps[0b010] = 0.326;
    amps[0b001] = 0.363;
    amps[0b111] = std::polar(0.74, -0.79 * kPi);
    return normalized(TargetName::AME3, std::move(amps));
}

TargetState make_target(TargetName name, std::size_t n_qubits) {
    switch (name) {
    case TargetName::GHZ:
        return ghz_state(n_qubits);
    case TargetName::W:
        return w_state(n_qubits);
    case TargetName::AME3:
        if (n_qubits != 3) {
            throw ValidationError("the AME target is defined for 3 qubits only");
        }
        return ame3_state();
    case TargetName::Custom:
        break;
    }
    throw ValidationError("custom targets are loaded from a file");
}

TargetState custom_state(std::vector<Complex> amplitudes, double tol) {
    double sq = 0.0;
    for (const auto &a : amplitudes) {
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
            throw ValidationError("custom target amplitudes must be finite");
        }
        sq += std::norm(a);
    }
    if (std::abs(sq - 1.0) > tol) {
        throw ValidationError("custom target squared norm is " + std::to_string(sq) + ", expected 1");
    }
    return normalized(TargetName::Custom, std::move(amplitudes));
}

TargetState read_custom_target(std::istream &in, std::optional<std::size_t> n_qubits) {
    std::vector<std::pair<std::size_t, Complex>> entries;
    std::size_t max_index = 0;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') {
            continue;
        }
        std::istringstream ls(line);
        std::size_t index = 0;
        double re = 0.0;
        double im = 0.0;
        std::string extra;
        if (!(ls >> index >> re >> im) || (ls >> extra)) {
            throw ValidationError("custom target line " + std::to_string(line_no) + ": expected `index real imag`");
        }
        entries.emplace_back(index, Complex{re, im});
        max_index = std::max(max_index, index);
    }
    std::size_t n = 1;
    while ((std::size_t{1} << n) <= max_index) {
        ++n;
    }
    if (n_qubits) {
        if ((std::size_t{1} << *n_qubits) <= max_index) {
            throw IndexError("custom target index " + std::to_string(max_index) + " exceeds the register");
        }
        n = *n_qubits;
    }
    if (n > kMaxQubits) {
        throw CapacityError("custom target register too large");
    }
    std::vector<Complex> amps(std::size_t{1} << n, Complex{0.0, 0.0});
    for (const auto &[index, value] : entries) {
        amps[index] = value;
    }
    return custom_state(std::move(amps));
}

TargetState load_custom_target(const std::string &path, std::optional<std::size_t> n_qubits) {
    std::ifstream in(path);
    if (!in) {
        throw ValidationError("cannot open custom target file '" + path + "'");
    }
    return read_custom_target(in, n_qubits);
}

Circuit ghz_circuit(std::size_t n_qubits) {
    require_at_least_two(n_qubits, "GHZ");
    Circuit c(n_qubits);
    c.h(0);
    for (std::size_t j = 1; j < n_qubits; ++j) {
        c.h(j).mcz({0, j}).h(j);
    }
    return c;
}

BoundCircuit w3_circuit() {
    Circuit c(3);
    std::vector<double> angles;
    auto rot = [&](GateKind kind, std::size_t q, double angle) {
        c.push(GateSpec{kind, {q}, c.n_params()});
        angles.push_back(angle);
    };
    // q0 -> sqrt(2/3)|0> + sqrt(1/3)|1>
    rot(GateKind::RY, 0, 2.0 * std::asin(1.0 / std::sqrt(3.0)));
    // Anti-controlled RY(pi/2) on q1: X on q0, then CRY = RZ(pi/2) CRX RZ(-pi/2).
    rot(GateKind::RX, 0, kPi);
    rot(GateKind::RZ, 1, -kPi / 2);
    c.push(GateSpec{GateKind::CRX, {0, 1}, c.n_params()});
    angles.push_back(kPi / 2);
    rot(GateKind::RZ, 1, kPi / 2);
    // q0 is still flipped; flip q1 so that |00> on (q0, q1) maps to |11>, then
    // X on q2 controlled by both as H-CCZ-H.
    rot(GateKind::RX, 1, kPi);
    c.h(2).mcz({0, 1, 2}).h(2);
    rot(GateKind::RX, 0, kPi);
    rot(GateKind::RX, 1, kPi);
    return bind(std::move(c), std::move(angles));
}

std::optional<BoundCircuit> target_circuit(TargetName name, std::size_t n_qubits) {
    if (name == TargetName::GHZ && n_qubits >= 2) {
        return BoundCircuit{ghz_circuit(n_qubits), {}};
    }
    if (name == TargetName::W && n_qubits == 3) {
        return w3_circuit();
    }
    return std::nullopt;
}

TargetUnitary TargetUnitary::from_circuit(BoundCircuit circuit) {
    TargetUnitary v;
    v.mode_ = Mode::ExplicitCircuit;
    v.n_qubits_ = circuit.circuit.n_qubits();
    v.adjoint_ = adjoint(circuit);
    v.first_column_ = execute(circuit, StateVector(v.n_qubits_));
    v.circuit_ = std::move(circuit);
    return v;
}

TargetUnitary TargetUnitary::from_matrix(Eigen::MatrixXcd matrix) {
    const auto dim = static_cast<std::size_t>(matrix.rows());
    if (matrix.rows() != matrix.cols() || dim < 2 || (dim & (dim - 1)) != 0) {
        throw ValidationError("target matrix must be square with power-of-two dimension");
    }
    TargetUnitary v;
    v.mode_ = Mode::CompletedMatrix;
    std::vector<Complex> col(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        col[i] = matrix(static_cast<Eigen::Index>(i), 0);
    }
    v.first_column_ = StateVector::from_amplitudes(std::move(col));
    v.n_qubits_ = v.first_column_->n_qubits();
    v.matrix_ = std::move(matrix);
    return v;
}

StateVector TargetUnitary::apply_adjoint(const StateVector &phi) const {
    if (phi.n_qubits() != n_qubits_) {
        throw ValidationError("state and target unitary have different qubit counts");
    }
    if (mode_ == Mode::ExplicitCircuit) {
        return execute(*adjoint_, phi);
    }
    const auto dim = static_cast<Eigen::Index>(phi.dim());
    Eigen::Map<const Eigen::VectorXcd> in(phi.amplitudes().data(), dim);
    Eigen::VectorXcd out = matrix_->adjoint() * in;
    return StateVector::from_amplitudes(std::vector<Complex>(out.data(), out.data() + dim));
}

Complex TargetUnitary::zero_amplitude(const StateVector &phi) const {
    if (phi.n_qubits() != n_qubits_) {
        throw ValidationError("state and target unitary have different qubit counts");
    }
    // Row 0 of V^dagger is the conjugated first column of V.
    return inner_product(*first_column_, phi);
}

StateVector TargetUnitary::prepared_state() const { return *first_column_; }

Eigen::MatrixXcd TargetUnitary::dense() const {
    if (matrix_) {
        return *matrix_;
    }
    return dense_unitary(*circuit_);
}

TargetUnitary completed_unitary(const TargetState &target) {
    const std::size_t dim = target.state.dim();
    if (target.n_qubits() > kDenseUnitaryMaxQubits) {
        throw CapacityError("completed target unitary limited to " + std::to_string(kDenseUnitaryMaxQubits) +
                            " qubits");
    }
    const auto d = static_cast<Eigen::Index>(dim);
    Eigen::MatrixXcd v = Eigen::MatrixXcd::Zero(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
        v(i, 0) = target.state[static_cast<std::size_t>(i)];
    }
    Eigen::Index filled = 1;
    for (Eigen::Index j = 0; j < d && filled < d; ++j) {
        Eigen::VectorXcd e = Eigen::VectorXcd::Unit(d, j);
        // Two orthogonalization passes keep the completion unitary to ~1e-15.
        for (int pass = 0; pass < 2; ++pass) {
            for (Eigen::Index k = 0; k < filled; ++k) {
                e -= v.col(k) * v.col(k).dot(e);
            }
        }
        const double norm = e.norm();
        if (norm > 1e-6) {
            v.col(filled++) = e / norm;
        }
    }
    if (filled != d) {
        throw NumericError("Gram-Schmidt completion lost rank");
    }
    return TargetUnitary::from_matrix(std::move(v));
}

} // namespace vqsp
