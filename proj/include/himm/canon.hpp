#pragma once

#include <optional>
#include <string>
#include <vector>

namespace himm {

/// Node-coloured undirected multigraph used as the common currency for
/// canonical forms (hypergraph factor graphs, division patterns).
struct ColoredGraph {
    std::vector<std::string> colors;
    std::vector<std::pair<int, int>> links;  // parallel links allowed, no loops
};

struct CanonicalForm {
    std::string certificate;
    std::vector<int> order;  // order[position] = node index
};

/// Canonical labelling by iterated colour refinement plus individualisation
/// over every member of the first non-singleton cell. The lexicographically
/// smallest leaf certificate wins, so two graphs are isomorphic (colour and
/// multiplicity preserving) iff their certificates are equal.
CanonicalForm canonical_form(const ColoredGraph& g);

/// Colour-preserving node bijection a -> b, if one exists.
std::optional<std::vector<int>> isomorphism(const ColoredGraph& a, const ColoredGraph& b);

}  // namespace himm
