#pragma once

#include <optional>
#include <string>
#include <vector>

#include "himm/canon.hpp"
#include "himm/hypergraph.hpp"

namespace himm {

enum class VertexMark { Original, Added };

/// Per-element marks that an isomorphism must preserve. Empty vectors mean
/// "all Original" / "no edge marks".
struct IsoMarking {
    std::vector<VertexMark> vertex_marks;
    std::vector<std::string> edge_marks;
};

struct HypergraphIsomorphism {
    std::vector<int> vertex_map;  // vertex index in A -> vertex index in B
    std::vector<int> edge_map;    // edge index in A -> edge index in B
};

/// Factor graph of g coloured by role and marks; the basis of hypergraph canonical forms.
ColoredGraph colored_factor_graph(const Hypergraph& g, const IsoMarking& marks = {});

std::string canonical_key(const Hypergraph& g, const IsoMarking& marks = {});

std::optional<HypergraphIsomorphism> find_isomorphism(const Hypergraph& a, const Hypergraph& b,
                                                      const IsoMarking& ma = {}, const IsoMarking& mb = {});

bool are_isomorphic(const Hypergraph& a, const Hypergraph& b, const IsoMarking& ma = {}, const IsoMarking& mb = {});

}  // namespace himm
