#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "himm/embedding.hpp"
#include "himm/hypergraph.hpp"
#include "himm/labeled_graph.hpp"

namespace himm::testing {

/// Plain enumeration of injective maps and simple paths. No pruning beyond
/// disjointness; only for patterns and hosts of a handful of nodes.
bool brute_force_embeds(const LabeledGraph& pattern, const LabeledGraph& host, const PinConstraint& pins);

/// Reduced Steiner topologies over terminals 0..r-1 as link lists (branch
/// nodes numbered from r), found by running through every Prüfer sequence on
/// r..2r-2 nodes and deduplicating with branch nodes unlabelled.
std::vector<std::vector<std::pair<int, int>>> pruefer_topologies(int r);
std::uint64_t pruefer_division_count(int r);

/// Number of division classes of h: all combinations of per-edge Prüfer
/// topologies glued at the vertices, deduplicated up to isomorphism keeping
/// only the vertex/branch distinction.
std::uint64_t division_class_count_oracle(const Hypergraph& h);

}  // namespace himm::testing
