#pragma once

#include <cstddef>
#include <string_view>

#include "vqsp/circuit.hpp"
#include "vqsp/statevector.hpp"

namespace vqsp {

/// The three hypergraph ansatz families: a ring 2-uniform graph, the ring
/// plus an all-qubit hyperedge, and that plus an entangling phase block.
enum class AnsatzKind { G2, G2_GN, G2_GN_W };

[[nodiscard]] std::string_view to_string(AnsatzKind kind);
/// Accepts "g2", "g2_gn", "g2_gn_w" (case-insensitive, '-' or '+' as separators).
[[nodiscard]] AnsatzKind ansatz_kind_from_string(std::string_view name);

struct AnsatzConfig {
    AnsatzKind kind = AnsatzKind::G2;
    std::size_t n_qubits = 2;
    std::size_t layers = 1;

    /// Throws ValidationError for N < 2, L < 1, or N < 3 with an N-uniform edge.
    void validate() const;

    bool operator==(const AnsatzConfig &) const = default;
};

/**
 * Builds the layered ansatz circuit.
 *
 * Each layer is:
 *  - ring block: RY column, the first round of ring CZ edges (N/2 disjoint
 *    edges), RY column, the remaining ring edges;
 *  - hyperedge block (G2_GN, G2_GN_W): one MCZ on every qubit, RY column;
 *  - phase block (G2_GN_W): ring of CRX gates i -> i+1 mod N in ring_edges
 *    order, RZ column, RX column.
 *
 * For N = 2 the ring edges {0,1} and {1,0} are the same pair of qubits; the
 * RY column between them keeps the two CZ gates from cancelling.
 */
Circuit build_ansatz(const AnsatzConfig &config);

/// 2NL, 3NL or 6NL.
std::size_t expected_parameter_count(const AnsatzConfig &config);

/// The tabulated depth per family and parity: 4L/6L, 6L/8L, 9L/11L (even/odd N).
std::size_t reference_depth(const AnsatzConfig &config);

/// H on every qubit followed by CZ over each edge of the cyclic k-uniform
/// hypergraph {i, ..., i+k-1 mod N} (duplicate edges dropped). k = 2 is the
/// ring graph state, k = N the single-hyperedge state.
StateVector graph_state_reference(std::size_t n_qubits, std::size_t k);

/// Ring edges {i, i+1 mod N} in scheduling order: even-indexed, odd-indexed,
/// then the closing edge for odd N. N = 2 yields (0,1) and (1,0).
std::vector<std::pair<std::size_t, std::size_t>> ring_edges(std::size_t n_qubits);

} // namespace vqsp
