#include "vqsp/ansatz.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <string>

#include "vqsp/errors.hpp"

namespace vqsp {

std::string_view to_string(AnsatzKind kind) {
    switch (kind) {
    case AnsatzKind::G2:
        return "g2";
    case AnsatzKind::G2_GN:
        return "g2_gn";
    case AnsatzKind::G2_GN_W:
        return "g2_gn_w";
    }
    return "?";
}

AnsatzKind ansatz_kind_from_string(std::string_view name) {
    std::string norm;
    for (char c : name) {
        if (c == '-' || c == '+') {
            c = '_';
        }
        norm.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
    for (auto kind : {AnsatzKind::G2, AnsatzKind::G2_GN, AnsatzKind::G2_GN_W}) {
        if (norm == to_string(kind)) {
            return kind;
        }
    }
    throw ValidationError("unknown ansatz kind '" + std::string(name) + "' (expected g2, g2_gn or g2_gn_w)");
}

void AnsatzConfig::validate() const {
    if (n_qubits < 2) {
        throw ValidationError("ansatz needs at least 2 qubits");
    }
    if (n_qubits > kMaxQubits) {
        throw CapacityError("ansatz register exceeds " + std::to_string(kMaxQubits) + " qubits");
    }
    if (layers < 1) {
        throw ValidationError("ansatz needs at least one layer");
    }
    if (kind != AnsatzKind::G2 && n_qubits < 3) {
        throw ValidationError(std::string(to_string(kind)) + " requires at least 3 qubits");
    }
}

std::vector<std::pair<std::size_t, std::size_t>> ring_edges(std::size_t n) {
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    if (n == 2) {
        edges.emplace_back(0, 1);
        edges.emplace_back(1, 0);
        return edges;
    }
    const bool odd = n % 2 == 1;
    const std::size_t closing = odd ? n - 1 : n;
    for (std::size_t start : {0, 1}) {
        for (std::size_t i = start; i < closing; i += 2) {
            edges.emplace_back(i, (i + 1) % n);
        }
    }
    if (odd) {
        edges.emplace_back(n - 1, 0);
    }
    return edges;
}

namespace {

void ry_column(Circuit &c) {
    for (std::size_t q = 0; q < c.n_qubits(); ++q) {
        c.ry(q);
    }
}

void all_qubits_edge(Circuit &c) {
    std::vector<std::size_t> all(c.n_qubits());
    for (std::size_t q = 0; q < all.size(); ++q) {
        all[q] = q;
    }
    c.mcz(std::move(all));
}

} // namespace

Circuit build_ansatz(const AnsatzConfig &config) {
    config.validate();
    const std::size_t n = config.n_qubits;
    const auto edges = ring_edges(n);
    const std::size_t first_round = std::min(edges.size(), n / 2);

    Circuit c(n);
    for (std::size_t layer = 0; layer < config.layers; ++layer) {
        ry_column(c);
        for (std::size_t e = 0; e < edges.size(); ++e) {
            if (e == first_round) {
                ry_column(c);
            }
            c.mcz({edges[e].first, edges[e].second});
        }
        if (first_round >= edges.size()) {
            ry_column(c);
        }

        if (config.kind == AnsatzKind::G2) {
            continue;
        }
        all_qubits_edge(c);
        ry_column(c);

        if (config.kind == AnsatzKind::G2_GN) {
            continue;
        }
        for (auto [control, target] : edges) {
            c.crx(control, target);
        }
        for (std::size_t q = 0; q < n; ++q) {
            c.rz(q);
        }
        for (std::size_t q = 0; q < n; ++q) {
            c.rx(q);
        }
    }
    return c;
}

std::size_t expected_parameter_count(const AnsatzConfig &config) {
    config.validate();
    const std::size_t nl = config.n_qubits * config.layers;
    switch (config.kind) {
    case AnsatzKind::G2:
        return 2 * nl;
    case AnsatzKind::G2_GN:
        return 3 * nl;
    case AnsatzKind::G2_GN_W:
        return 6 * nl;
    }
    return 0;
}

std::size_t reference_depth(const AnsatzConfig &config) {
    config.validate();
    const bool even = config.n_qubits % 2 == 0;
    std::size_t per_layer = 0;
    switch (config.kind) {
    case AnsatzKind::G2:
        per_layer = even ? 4 : 6;
        break;
    case AnsatzKind::G2_GN:
        per_layer = even ? 6 : 8;
        break;
    case AnsatzKind::G2_GN_W:
        per_layer = even ? 9 : 11;
        break;
    }
    return per_layer * config.layers;
}

StateVector graph_state_reference(std::size_t n_qubits, std::size_t k) {
    if (k < 2 || k > n_qubits) {
        throw ValidationError("hyperedge arity must satisfy 2 <= k <= n_qubits");
    }
    StateVector s(n_qubits);
    for (std::size_t q = 0; q < n_qubits; ++q) {
        s.hadamard(q);
    }
    std::set<std::vector<std::size_t>> seen;
    for (std::size_t i = 0; i < n_qubits; ++i) {
        std::vector<std::size_t> edge;
        for (std::size_t j = 0; j < k; ++j) {
            edge.push_back((i + j) % n_qubits);
        }
        auto key = edge;
        std::sort(key.begin(), key.end());
        if (seen.insert(key).second) {
            s.multi_controlled_z(edge);
        }
    }
    return s;
}

} // namespace vqsp
