#include "vqsp/noise.hpp"

#include <bit>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

#include "vqsp/errors.hpp"
#include "vqsp/rng.hpp"

namespace vqsp {

double ReadoutNoiseModel::rate(std::size_t qubit) const {
    return per_qubit.empty() ? epsilon : per_qubit.at(qubit);
}

void ReadoutNoiseModel::validate(std::size_t n_qubits) const {
    if (!per_qubit.empty() && per_qubit.size() != n_qubits) {
        throw ValidationError("per-qubit readout rates must match the register size");
    }
    for (std::size_t q = 0; q < n_qubits; ++q) {
        const double e = rate(q);
        if (!(e >= 0.0 && e < 0.5)) {
            throw ValidationError("readout error rate must lie in [0, 0.5), got " + std::to_string(e));
        }
    }
}

ProbabilityVector apply_readout_noise(const ProbabilityVector &probs, const ReadoutNoiseModel &model) {
    const std::size_t n = probs.n_qubits;
    model.validate(n);
    if (probs.probs.size() != (std::size_t{1} << n)) {
        throw ValidationError("probability vector length does not match 2^n_qubits");
    }
    ProbabilityVector out = probs;
    auto &p = out.probs;
    for (std::size_t q = 0; q < n; ++q) {
        const double e = model.rate(q);
        if (e == 0.0) {
            continue;
        }
        const std::size_t bit = std::size_t{1} << (n - 1 - q);
        for (std::size_t i = 0; i < p.size(); ++i) {
            if ((i & bit) != 0) {
                continue;
            }
            const double p0 = p[i];
            const double p1 = p[i | bit];
            p[i] = (1.0 - e) * p0 + e * p1;
            p[i | bit] = e * p0 + (1.0 - e) * p1;
        }
    }
    return out;
}

void CalibrationMatrix::validate(double tol) const {
    const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n_qubits);
    if (m.rows() != dim || m.cols() != dim) {
        throw ValidationError("calibration matrix must be 2^N x 2^N");
    }
    if ((m.array() < 0.0).any() || !m.allFinite()) {
        throw ValidationError("calibration matrix entries must be finite and nonnegative");
    }
    for (Eigen::Index j = 0; j < dim; ++j) {
        if (std::abs(m.col(j).sum() - 1.0) > tol) {
            throw ValidationError("calibration column " + std::to_string(j) + " does not sum to 1");
        }
    }
}

namespace {

ProbabilityVector one_hot(std::size_t n_qubits, std::size_t j) {
    ProbabilityVector p{n_qubits, std::vector<double>(std::size_t{1} << n_qubits, 0.0)};
    p.probs[j] = 1.0;
    return p;
}

} // namespace

CalibrationMatrix build_calibration_matrix(std::size_t n_qubits, const ReadoutNoiseModel &model,
                                           std::uint64_t shots, std::uint64_t seed) {
    if (shots == 0) {
        throw ValidationError("calibration needs at least one shot per basis state");
    }
    if (n_qubits < 1 || n_qubits > kMaxQubits) {
        throw CapacityError("calibration register out of range");
    }
    model.validate(n_qubits);
    const std::size_t dim = std::size_t{1} << n_qubits;
    CalibrationMatrix cal{n_qubits, Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(dim),
                                                          static_cast<Eigen::Index>(dim))};
    for (std::size_t j = 0; j < dim; ++j) {
        auto rng = make_rng({seed, j});
        const auto counts = sample_counts(apply_readout_noise(one_hot(n_qubits, j), model), shots, rng);
        for (const auto &[i, c] : counts.counts) {
            cal.m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                static_cast<double>(c) / static_cast<double>(shots);
        }
    }
    return cal;
}

CalibrationMatrix analytic_calibration_matrix(std::size_t n_qubits, const ReadoutNoiseModel &model) {
    if (n_qubits < 1 || n_qubits > kMaxQubits) {
        throw CapacityError("calibration register out of range");
    }
    const std::size_t dim = std::size_t{1} << n_qubits;
    CalibrationMatrix cal{n_qubits, Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(dim),
                                                          static_cast<Eigen::Index>(dim))};
    for (std::size_t j = 0; j < dim; ++j) {
        const auto col = apply_readout_noise(one_hot(n_qubits, j), model);
        for (std::size_t i = 0; i < dim; ++i) {
            cal.m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = col.probs[i];
        }
    }
    return cal;
}

Mitigator::Mitigator(const CalibrationMatrix &cal) : n_qubits_(cal.n_qubits), condition_(0.0) {
    cal.validate(1e-6);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(cal.m);
    const auto &s = svd.singularValues();
    const double smin = s(s.size() - 1);
    condition_ = smin > 0.0 ? s(0) / smin : std::numeric_limits<double>::infinity();
    if (!(condition_ <= kMaxConditionNumber)) {
        std::ostringstream os;
        os << "calibration matrix is ill-conditioned (condition number " << condition_ << " > "
           << kMaxConditionNumber << ")";
        throw MitigationError(os.str(), condition_);
    }
    lu_.compute(cal.m);
}

ProbabilityVector Mitigator::apply(const ProbabilityVector &noisy) const {
    const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n_qubits_);
    if (noisy.n_qubits != n_qubits_ || static_cast<Eigen::Index>(noisy.probs.size()) != dim) {
        throw ValidationError("noisy distribution does not match the calibration matrix");
    }
    Eigen::Map<const Eigen::VectorXd> b(noisy.probs.data(), dim);
    Eigen::VectorXd x = lu_.solve(b);
    if (!x.allFinite()) {
        throw NumericError("mitigation produced non-finite values");
    }
    x = x.cwiseMax(0.0);
    const double total = x.sum();
    if (!(total > 0.0)) {
        throw NumericError("mitigated distribution has no positive mass");
    }
    x /= total;
    return ProbabilityVector{n_qubits_, std::vector<double>(x.data(), x.data() + dim)};
}

ProbabilityVector mitigate(const CalibrationMatrix &cal, const ProbabilityVector &noisy) {
    return Mitigator(cal).apply(noisy);
}

void write_calibration(std::ostream &out, const CalibrationMatrix &cal) {
    out << "# calibration n_qubits=" << cal.n_qubits << '\n';
    out << std::setprecision(std::numeric_limits<double>::max_digits10);
    for (Eigen::Index i = 0; i < cal.m.rows(); ++i) {
        for (Eigen::Index j = 0; j < cal.m.cols(); ++j) {
            out << (j ? " " : "") << cal.m(i, j);
        }
        out << '\n';
    }
}

CalibrationMatrix read_calibration(std::istream &in) {
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(in, line)) {
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') {
            continue;
        }
        std::istringstream ls(line);
        std::vector<double> row;
        double v = 0.0;
        while (ls >> v) {
            row.push_back(v);
        }
        if (!ls.eof()) {
            throw ValidationError("calibration file contains a non-numeric entry");
        }
        rows.push_back(std::move(row));
    }
    const std::size_t dim = rows.size();
    if (dim < 2 || (dim & (dim - 1)) != 0) {
        throw ValidationError("calibration file must hold 2^N rows");
    }
    CalibrationMatrix cal{static_cast<std::size_t>(std::countr_zero(dim)),
                          Eigen::MatrixXd(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim))};
    for (std::size_t i = 0; i < dim; ++i) {
        if (rows[i].size() != dim) {
            throw ValidationError("calibration row " + std::to_string(i) + " has the wrong length");
        }
        for (std::size_t j = 0; j < dim; ++j) {
            cal.m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
        }
    }
    cal.validate(1e-9);
    return cal;
}

void save_calibration(const std::string &path, const CalibrationMatrix &cal) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write calibration file '" + path + "'");
    }
    write_calibration(out, cal);
}

CalibrationMatrix load_calibration(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw ValidationError("cannot open calibration file '" + path + "'");
    }
    return read_calibration(in);
}

} // namespace vqsp
