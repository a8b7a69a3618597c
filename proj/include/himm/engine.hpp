#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "himm/divisions.hpp"
#include "himm/embedding.hpp"
#include "himm/hypergraph.hpp"
#include "himm/transforms.hpp"

namespace himm {

struct EdgeSubgraph {
    std::vector<EdgeId> edges;                 // edge ids of G
    std::vector<VertexId> extra_vertices;      // vertices of those edges that are not terminal images
};

/// Injective vertex map plus one connected cover per hyperedge of H, pairwise
/// edge-disjoint, plus an optional coalesce/dewet replay. Entries follow the
/// vertex and edge order of H.
struct ImmersionWitness {
    std::vector<std::pair<VertexId, VertexId>> vertex_map;
    std::vector<std::pair<EdgeId, EdgeSubgraph>> edge_subgraphs;
    std::optional<std::vector<OperationStep>> replay;

    const VertexId* image(const VertexId& v) const;
    const EdgeSubgraph* subgraph(const EdgeId& e) const;
};

/// Dual vocabulary: hyperedges of H map injectively to hyperedges of G, and
/// every vertex of H to a set of vertices of G.
struct DualWitness {
    std::vector<std::pair<EdgeId, EdgeId>> edge_map;
    std::vector<std::pair<VertexId, std::vector<VertexId>>> vertex_subgraphs;
};

enum class Answer { Yes, No, Unknown };
std::string_view to_string(Answer a);

struct DecisionStats {
    std::string method;  // "pipeline" or "oracle"
    Params params;
    std::uint64_t division_classes = 0;
    std::uint64_t classes_tested = 0;
    std::uint64_t expansions = 0;
    int succeeding_class = -1;  // index into the division set
    std::string note;           // preflight reason and similar
};

struct Decision {
    Answer answer = Answer::No;
    std::optional<ImmersionWitness> witness;
    std::optional<DualWitness> dual_witness;
    DecisionStats stats;
};

struct EngineOptions {
    std::optional<std::uint64_t> M;  // overrides default_params
    std::optional<std::uint64_t> L;
    DensifyMode mode = DensifyMode::Pin;
    DivisionMode divisions = DivisionMode::Full;
    DivisionCaps caps;
    SearchLimits limits;  // expansion budget applies per embedding test
    unsigned threads = 1;
};

/// Parameters the pipeline would use for (H, G) under the given overrides.
Params resolve_params(const Hypergraph& h, const Hypergraph& g, const EngineOptions& opts);

/// Division-set pipeline: every member of D(H) is tested for an embedding
/// into the M-generalised factor graph of G, with terminals pinned (or both
/// sides densified with L-cliques in literal mode).
Decision decide_immersion(const Hypergraph& h, const Hypergraph& g, const EngineOptions& opts = {});

/// Direct search over the definition: injective vertex maps and pairwise
/// edge-disjoint minimal connected covers.
Decision immersion_oracle(const Hypergraph& h, const Hypergraph& g, const SearchLimits& limits = {});

struct VerificationReport {
    bool ok = true;
    std::vector<std::string> violations;
    /// After a successful replay: H edge id -> id of the matching final edge.
    std::vector<std::pair<EdgeId, EdgeId>> replay_edge_map;
    bool replay_checked = false;
};

VerificationReport verify_immersion(const Hypergraph& h, const Hypergraph& g, const ImmersionWitness& w);

/// Coalesce each subgraph's edges in breadth-first order, dewet every vertex
/// that is not a terminal image, then delete leftover isolated vertices.
std::vector<OperationStep> build_replay(const Hypergraph& h, const Hypergraph& g, const ImmersionWitness& w);

/// Projects an embedding of a division pattern in the (possibly densified)
/// M-generalised factor graph of G back to an immersion of H in G, replay
/// included. Throws ProjectionFailure if the result does not verify.
ImmersionWitness extract_witness(const Hypergraph& h, const Hypergraph& g, const DivisionPattern& member,
                                 const LabeledGraph& host, const EmbeddingWitness& ew);

enum class Method { Pipeline, Oracle };

/// Dual immersion of X in Y, decided through the transposes: X is
/// dual-immersed in Y iff untranspose(X) is immersed in untranspose(Y).
Decision decide_dual_immersion(const TransposeResult& x, const TransposeResult& y, const EngineOptions& opts = {},
                               Method method = Method::Pipeline);
Decision decide_dual_immersion(const Hypergraph& x, const Hypergraph& y, const EngineOptions& opts = {},
                               Method method = Method::Pipeline);

/// Checks a dual witness against the definition on X and Y directly. Vertex
/// subgraphs are required to be pairwise disjoint for all pairs.
VerificationReport verify_dual_immersion(const Hypergraph& x, const Hypergraph& y, const DualWitness& w);
/// As above, with the dropped lists of the transposes read as hyperedges
/// without vertices.
VerificationReport verify_dual_immersion(const TransposeResult& x, const TransposeResult& y, const DualWitness& w);

}  // namespace himm
