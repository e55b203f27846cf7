#include "vqsp/statevector.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <string>

#include "vqsp/errors.hpp"

namespace vqsp {

namespace {

constexpr Complex kI{0.0, 1.0};

void check_capacity(std::size_t n_qubits) {
    if (n_qubits < 1 || n_qubits > kMaxQubits) {
        throw CapacityError("n_qubits must be in [1, " + std::to_string(kMaxQubits) + "], got " +
                            std::to_string(n_qubits));
    }
}

void rotation_matrix(Axis axis, double angle, Complex (&m)[2][2]) {
    const double c = std::cos(angle / 2);
    const double s = std::sin(angle / 2);
    switch (axis) {
    case Axis::X:
        m[0][0] = c;
        m[0][1] = -kI * s;
        m[1][0] = -kI * s;
        m[1][1] = c;
        break;
    case Axis::Y:
        m[0][0] = c;
        m[0][1] = -s;
        m[1][0] = s;
        m[1][1] = c;
        break;
    case Axis::Z:
        m[0][0] = std::polar(1.0, -angle / 2);
        m[0][1] = 0.0;
        m[1][0] = 0.0;
        m[1][1] = std::polar(1.0, angle / 2);
        break;
    }
}

} // namespace

StateVector::StateVector(std::size_t n_qubits) : n_qubits_(n_qubits) {
    check_capacity(n_qubits);
    amplitudes_.assign(std::size_t{1} << n_qubits, Complex{0.0, 0.0});
    amplitudes_[0] = 1.0;
}

StateVector::StateVector(std::size_t n_qubits, std::vector<Complex> amplitudes)
    : n_qubits_(n_qubits), amplitudes_(std::move(amplitudes)) {}

StateVector StateVector::from_amplitudes(std::vector<Complex> amplitudes) {
    const std::size_t dim = amplitudes.size();
    if (dim < 2 || (dim & (dim - 1)) != 0) {
        throw ValidationError("amplitude array length must be a power of two >= 2, got " + std::to_string(dim));
    }
    const auto n = static_cast<std::size_t>(std::countr_zero(dim));
    check_capacity(n);
    return StateVector(n, std::move(amplitudes));
}

StateVector StateVector::basis(std::size_t n_qubits, std::size_t index) {
    StateVector s(n_qubits);
    if (index >= s.dim()) {
        throw IndexError("basis index " + std::to_string(index) + " out of range");
    }
    s.amplitudes_[0] = 0.0;
    s.amplitudes_[index] = 1.0;
    return s;
}

double StateVector::norm_squared() const noexcept {
    double acc = 0.0;
    for (const auto &a : amplitudes_) {
        acc += std::norm(a);
    }
    return acc;
}

void StateVector::normalize() {
    const double n = std::sqrt(norm_squared());
    if (!(n > 0.0) || !std::isfinite(n)) {
        throw NumericError("cannot normalize a zero or non-finite state");
    }
    for (auto &a : amplitudes_) {
        a /= n;
    }
}

void StateVector::check_qubit(std::size_t qubit) const {
    if (qubit >= n_qubits_) {
        throw IndexError("qubit " + std::to_string(qubit) + " out of range for " + std::to_string(n_qubits_) +
                         "-qubit register");
    }
}

void StateVector::apply_2x2(std::size_t qubit, const Complex (&m)[2][2], std::size_t control_mask) {
    const std::size_t bit = mask(qubit);
    const std::size_t dim = amplitudes_.size();
    for (std::size_t i = 0; i < dim; ++i) {
        if ((i & bit) != 0 || (i & control_mask) != control_mask) {
            continue;
        }
        const Complex a0 = amplitudes_[i];
        const Complex a1 = amplitudes_[i | bit];
        amplitudes_[i] = m[0][0] * a0 + m[0][1] * a1;
        amplitudes_[i | bit] = m[1][0] * a0 + m[1][1] * a1;
    }
}

void StateVector::rotate(Axis axis, double angle, std::size_t qubit) {
    check_qubit(qubit);
    if (!std::isfinite(angle)) {
        throw ValidationError("rotation angle must be finite");
    }
    Complex m[2][2];
    rotation_matrix(axis, angle, m);
    apply_2x2(qubit, m, 0);
}

void StateVector::hadamard(std::size_t qubit) {
    check_qubit(qubit);
    const double r = 1.0 / std::sqrt(2.0);
    const Complex m[2][2] = {{r, r}, {r, -r}};
    apply_2x2(qubit, m, 0);
}

void StateVector::multi_controlled_z(std::span<const std::size_t> qubits) {
    if (qubits.size() < 2) {
        throw IndexError("multi-controlled Z needs at least 2 qubits");
    }
    std::size_t all = 0;
    for (auto q : qubits) {
        check_qubit(q);
        if ((all & mask(q)) != 0) {
            throw IndexError("duplicate qubit " + std::to_string(q) + " in multi-controlled Z");
        }
        all |= mask(q);
    }
    for (std::size_t i = 0; i < amplitudes_.size(); ++i) {
        if ((i & all) == all) {
            amplitudes_[i] = -amplitudes_[i];
        }
    }
}

void StateVector::controlled_rotate(std::size_t control, std::size_t target, Axis axis, double angle) {
    check_qubit(control);
    check_qubit(target);
    if (control == target) {
        throw IndexError("control and target must differ");
    }
    if (!std::isfinite(angle)) {
        throw ValidationError("rotation angle must be finite");
    }
    Complex m[2][2];
    rotation_matrix(axis, angle, m);
    apply_2x2(target, m, mask(control));
}

void StateVector::apply_generator(Axis axis, std::size_t qubit, std::ptrdiff_t control) {
    check_qubit(qubit);
    std::size_t control_mask = 0;
    if (control >= 0) {
        check_qubit(static_cast<std::size_t>(control));
        control_mask = mask(static_cast<std::size_t>(control));
        // Project out the control = 0 block: the generator is |1><1| (x) sigma/2.
        for (std::size_t i = 0; i < amplitudes_.size(); ++i) {
            if ((i & control_mask) == 0) {
                amplitudes_[i] = 0.0;
            }
        }
    }
    Complex m[2][2];
    const Complex h = -kI * 0.5;
    switch (axis) {
    case Axis::X:
        m[0][0] = 0.0;
        m[0][1] = h;
        m[1][0] = h;
        m[1][1] = 0.0;
        break;
    case Axis::Y:
        m[0][0] = 0.0;
        m[0][1] = -kI * h;
        m[1][0] = kI * h;
        m[1][1] = 0.0;
        break;
    case Axis::Z:
        m[0][0] = h;
        m[0][1] = 0.0;
        m[1][0] = 0.0;
        m[1][1] = -h;
        break;
    }
    apply_2x2(qubit, m, control_mask);
}

void ProbabilityVector::validate(double tol) const {
    if (probs.size() != (std::size_t{1} << n_qubits)) {
        throw ValidationError("probability vector length does not match 2^n_qubits");
    }
    double sum = 0.0;
    for (double p : probs) {
        if (!std::isfinite(p) || p < -tol) {
            throw ValidationError("probability entries must be finite and nonnegative");
        }
        sum += p;
    }
    if (std::abs(sum - 1.0) > tol) {
        throw ValidationError("probabilities sum to " + std::to_string(sum) + ", expected 1");
    }
}

std::uint64_t ShotCounts::count(std::uint64_t index) const {
    auto it = counts.find(index);
    return it == counts.end() ? 0 : it->second;
}

ProbabilityVector ShotCounts::frequencies(std::size_t n_qubits) const {
    ProbabilityVector out{n_qubits, std::vector<double>(std::size_t{1} << n_qubits, 0.0)};
    for (const auto &[index, c] : counts) {
        if (index >= out.probs.size()) {
            throw IndexError("count index outside the register");
        }
        out.probs[index] = static_cast<double>(c) / static_cast<double>(total_shots);
    }
    return out;
}

StateVector new_zero_state(std::size_t n_qubits) { return StateVector(n_qubits); }

StateVector apply_single_qubit_rotation(StateVector state, Axis axis, double angle, std::size_t qubit) {
    state.rotate(axis, angle, qubit);
    return state;
}

StateVector apply_multi_controlled_z(StateVector state, std::span<const std::size_t> qubits) {
    state.multi_controlled_z(qubits);
    return state;
}

StateVector apply_controlled_rotation(StateVector state, std::size_t control, std::size_t target, Axis axis,
                                      double angle) {
    state.controlled_rotate(control, target, axis, angle);
    return state;
}

ProbabilityVector probabilities(const StateVector &state) {
    ProbabilityVector out{state.n_qubits(), std::vector<double>(state.dim())};
    std::transform(state.amplitudes().begin(), state.amplitudes().end(), out.probs.begin(),
                   [](const Complex &a) { return std::norm(a); });
    return out;
}

ShotCounts sample_counts(const ProbabilityVector &probs, std::uint64_t shots, Rng &rng) {
    probs.validate(1e-8);
    if (shots == 0) {
        throw ValidationError("shots must be >= 1");
    }
    // Conditional-binomial decomposition of the multinomial.
    ShotCounts out;
    out.total_shots = shots;
    std::uint64_t remaining = shots;
    double mass = 1.0;
    std::size_t last = probs.probs.size() - 1;
    while (last > 0 && !(probs.probs[last] > 0.0)) {
        --last;
    }
    for (std::size_t i = 0; i <= last && remaining > 0; ++i) {
        const double p = std::max(probs.probs[i], 0.0);
        std::uint64_t k = 0;
        if (i == last || p >= mass) {
            k = remaining;
        } else if (p > 0.0) {
            std::binomial_distribution<long long> draw(static_cast<long long>(remaining), std::clamp(p / mass, 0.0, 1.0));
            k = static_cast<std::uint64_t>(draw(rng));
        }
        if (k > 0) {
            out.counts[i] = k;
        }
        remaining -= k;
        mass -= p;
    }
    return out;
}

ShotCounts sample_counts(const ProbabilityVector &probs, std::uint64_t shots, std::uint64_t rng_seed) {
    auto rng = make_rng({rng_seed});
    return sample_counts(probs, shots, rng);
}

Complex inner_product(const StateVector &a, const StateVector &b) {
    if (a.n_qubits() != b.n_qubits()) {
        throw ValidationError("inner product of states with different qubit counts");
    }
    Complex acc{0.0, 0.0};
    for (std::size_t i = 0; i < a.dim(); ++i) {
        acc += std::conj(a[i]) * b[i];
    }
    return acc;
}

double fidelity(const StateVector &a, const StateVector &b) { return std::norm(inner_product(a, b)); }

} // namespace vqsp
