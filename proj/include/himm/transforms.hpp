#pragma once

#include <cstdint>
#include <span>
#include <string>

#include "himm/hypergraph.hpp"
#include "himm/labeled_graph.hpp"

namespace himm {

enum class DensifyMode { Pin, Literal };

/// Duplicate count M, clique size L and how densification is realised.
struct Params {
    std::uint64_t M = 1;
    std::uint64_t L = 2;
    DensifyMode mode = DensifyMode::Pin;
};

std::string_view mode_name(DensifyMode mode);

/// Bipartite incidence graph: vertex nodes `v:<x>#1` first, then edge nodes `e:<id>`.
LabeledGraph factor_graph(const Hypergraph& g);

/// Factor graph with M interchangeable duplicates per vertex, each linked to
/// every edge node incident to its origin. Node layout: for each vertex in
/// order its duplicates 1..M, then the edge nodes in edge order.
LabeledGraph m_factor_graph(const Hypergraph& g, std::uint64_t M);

/// Index of the duplicate `dup` (1-based) of vertex `v` in m_factor_graph(g, M).
inline int m_factor_vertex_node(int v, int dup, std::uint64_t M) {
    return static_cast<int>(static_cast<std::uint64_t>(v) * M + static_cast<std::uint64_t>(dup - 1));
}
inline int m_factor_edge_node(const Hypergraph& g, int e, std::uint64_t M) {
    return static_cast<int>(g.vertex_count() * M + static_cast<std::uint64_t>(e));
}

/// Hangs an L-clique off every target: L-1 fresh added nodes linked to each
/// other and to the target. Added nodes are appended after the input nodes,
/// so removing them restores the input exactly.
LabeledGraph densify(const LabeledGraph& x, std::span<const int> targets, std::uint64_t L);

/// Pin-eligible (duplicate index 1) vertex nodes, the densification targets of a host.
std::vector<int> first_duplicates(const LabeledGraph& host);

/// M = 1 + sum over edges of max(2|e|-2, 1); L = 1 + M * (M|V(G)| + |E(G)|).
Params default_params(const Hypergraph& h, const Hypergraph& g);

/// Inserts one added degree-2 node on link `link_index`.
LabeledGraph subdivide(const LabeledGraph& x, std::size_t link_index);

/// Removes unprotected degree-2 nodes until none remain. Throws LoopCreated
/// when a removal would join a node to itself. Node order is preserved.
LabeledGraph smooth_reduce(const LabeledGraph& x, std::span<const int> protected_nodes);

/// As smooth_reduce, but removing eligible nodes in the given priority order
/// (used to check confluence).
LabeledGraph smooth_reduce_ordered(const LabeledGraph& x, std::span<const int> protected_nodes,
                                   std::span<const int> removal_priority);

}  // namespace himm
