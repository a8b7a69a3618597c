#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "himm/error.hpp"

namespace himm {

using VertexId = std::string;
using EdgeId = std::string;

struct HyperEdge {
    EdgeId id;
    std::vector<int> vertices;  // indices into Hypergraph::vertices(), in insertion order
};

/// Finite loopless hypergraph with named vertices and named (possibly
/// parallel) hyperedges. Every hyperedge holds at least one vertex and no
/// vertex twice. Values are immutable once built; the operations below
/// return new hypergraphs.
class Hypergraph {
public:
    Hypergraph() = default;

    /// Throws Error(DuplicateId / InvalidHypergraph / UnknownVertex).
    Hypergraph(std::vector<VertexId> vertices,
               std::vector<std::pair<EdgeId, std::vector<VertexId>>> edges);

    int add_vertex(const VertexId& v);
    int add_edge(const EdgeId& id, const std::vector<VertexId>& vertices);
    int add_edge_indices(const EdgeId& id, std::vector<int> vertices);

    std::size_t vertex_count() const { return vertices_.size(); }
    std::size_t edge_count() const { return edges_.size(); }
    const std::vector<VertexId>& vertices() const { return vertices_; }
    const std::vector<HyperEdge>& edges() const { return edges_; }
    const VertexId& vertex(int i) const { return vertices_.at(static_cast<std::size_t>(i)); }
    const HyperEdge& edge(int i) const { return edges_.at(static_cast<std::size_t>(i)); }

    std::optional<int> find_vertex(const VertexId& v) const;
    std::optional<int> find_edge(const EdgeId& e) const;
    int vertex_index(const VertexId& v) const;  // throws UnknownVertex
    int edge_index(const EdgeId& e) const;      // throws UnknownEdge

    std::vector<VertexId> edge_vertex_ids(int e) const;
    bool edge_contains(int e, int v) const;
    std::size_t degree(int v) const;
    std::size_t incidence_count() const;
    /// Incident edge indices for every vertex, in edge order.
    std::vector<std::vector<int>> incidence() const;

    /// Smallest id of the form `base`, `base'`, `base''`, ... not yet used as an edge id.
    EdgeId fresh_edge_id(const std::string& base) const;
    VertexId fresh_vertex_id(const std::string& base) const;

    friend bool operator==(const Hypergraph& a, const Hypergraph& b);

private:
    std::vector<VertexId> vertices_;
    std::vector<HyperEdge> edges_;
    std::unordered_map<VertexId, int> vertex_index_;
    std::unordered_map<EdgeId, int> edge_index_;
};

// ---------------------------------------------------------------------------
// Elementary operations

/// Replaces e1, e2 (sharing a vertex) by one edge `cl:<e1>+<e2>` on their union.
Hypergraph coalesce_edges(const Hypergraph& g, const EdgeId& e1, const EdgeId& e2);

/// Replaces e by `dw:<e>-<v>` = e \ {v}. Dewetting a size-1 edge is an error.
Hypergraph dewet(const Hypergraph& g, const EdgeId& e, const VertexId& v);

/// Ordinary-graph lifting of {v,u},{u,w} into {v,w} (`lf:<f1>+<f2>`).
Hypergraph lift(const Hypergraph& g, const EdgeId& f1, const EdgeId& f2);

/// Contracts u and v (which must share an edge) into one vertex. The merged
/// vertex takes `merged_name` when given, `vc:<u>+<v>` otherwise. Edges are
/// kept even when they shrink to size 1.
Hypergraph vertex_coalesce(const Hypergraph& g, const VertexId& u, const VertexId& v,
                           std::optional<VertexId> merged_name = std::nullopt);

Hypergraph delete_edge(const Hypergraph& g, const EdgeId& e);

/// Removes an isolated vertex; throws VertexNotIsolated otherwise.
Hypergraph delete_vertex(const Hypergraph& g, const VertexId& v);

struct TransposeResult {
    Hypergraph graph;
    std::vector<VertexId> dropped;  // isolated vertices of the input (they would be empty edges)
};

TransposeResult transpose(const Hypergraph& g);

/// Inverse of transpose: the dropped list comes back as isolated vertices.
Hypergraph untranspose(const TransposeResult& t);

/// True iff every vertex of `terminals` is in one connected component of the
/// sub-hypergraph formed by `edges` plus `terminals`.
bool is_connected_cover(const Hypergraph& g, std::span<const EdgeId> edges,
                        std::span<const VertexId> terminals);
bool is_connected_cover_idx(const Hypergraph& g, std::span<const int> edges,
                            std::span<const int> terminals);

// ---------------------------------------------------------------------------
// Operation sequences

enum class OpKind { Coalesce, Dewet, Lift, VertexCoalesce, DeleteEdge, DeleteVertex };

struct OperationStep {
    OpKind kind;
    std::vector<std::string> args;

    static OperationStep coalesce(EdgeId e1, EdgeId e2) { return {OpKind::Coalesce, {std::move(e1), std::move(e2)}}; }
    static OperationStep dewet(EdgeId e, VertexId v) { return {OpKind::Dewet, {std::move(e), std::move(v)}}; }
    static OperationStep lift(EdgeId f1, EdgeId f2) { return {OpKind::Lift, {std::move(f1), std::move(f2)}}; }
    static OperationStep vertex_coalesce(VertexId u, VertexId v) { return {OpKind::VertexCoalesce, {std::move(u), std::move(v)}}; }
    static OperationStep delete_edge(EdgeId e) { return {OpKind::DeleteEdge, {std::move(e)}}; }
    static OperationStep delete_vertex(VertexId v) { return {OpKind::DeleteVertex, {std::move(v)}}; }

    friend bool operator==(const OperationStep&, const OperationStep&) = default;
};

std::string_view op_name(OpKind kind);
OpKind op_from_name(std::string_view name);  // throws ParseError

Hypergraph apply_step(const Hypergraph& g, const OperationStep& step);

/// Folds steps left to right. A failing step is rethrown with its index in the message.
Hypergraph apply_sequence(const Hypergraph& g, std::span<const OperationStep> steps);

/// Sub-hypergraph on the given edges and vertices (vertices of the edges are added).
Hypergraph sub_hypergraph(const Hypergraph& g, std::span<const int> edges, std::span<const int> extra_vertices);

}  // namespace himm
