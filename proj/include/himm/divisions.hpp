#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "himm/hypergraph.hpp"
#include "himm/labeled_graph.hpp"

namespace himm {

/// Reduced Steiner-tree topology over the labelled terminals of one
/// hyperedge. Nodes 0..r-1 are the terminals in the order given, nodes
/// r..r+branch_count-1 are unlabelled branch nodes.
///
/// Invariants: the links form a spanning tree, every leaf is a terminal,
/// every branch node has degree >= 3, and branch_count <= max(r-2, 0).
struct CanonicalTree {
    std::vector<VertexId> terminals;
    int branch_count = 0;
    std::vector<std::pair<int, int>> links;
    std::string key;  // terminal-labelled canonical string

    std::size_t node_count() const { return terminals.size() + static_cast<std::size_t>(branch_count); }
    bool is_star() const;
};

/// Checks the four CanonicalTree invariants.
bool satisfies_tree_invariants(const CanonicalTree& t);

struct DivisionCaps {
    std::size_t max_edge_size = 6;
    std::uint64_t max_members = 100'000;
};

/// Every reduced topology over the terminals, one per class fixing terminal
/// labels. The full star comes first, the rest follow in key order.
std::vector<CanonicalTree> enumerate_edge_divisions(const std::vector<VertexId>& terminals,
                                                    const DivisionCaps& caps = {});

struct DivisionPattern {
    LabeledGraph graph;             // terminals = V(H) first (pinned), then branch nodes
    std::vector<int> choice;        // per hyperedge of H: index into its enumeration
    std::vector<int> link_owner;    // per link: hyperedge index of H
    std::vector<int> node_owner;    // per node: hyperedge index for branch nodes, -1 for terminals
    std::string key;                // canonical key (terminal labels forgotten)
};

/// Per-hyperedge enumerations for H, in edge order.
std::vector<std::vector<CanonicalTree>> edge_division_table(const Hypergraph& h, const DivisionCaps& caps = {});

DivisionPattern assemble_pattern(const Hypergraph& h, const std::vector<int>& choice,
                                 const std::vector<std::vector<CanonicalTree>>& table);
DivisionPattern assemble_pattern(const Hypergraph& h, const std::vector<int>& choice);

/// Canonical key of a pattern under isomorphisms preserving the terminal /
/// branch distinction (terminal labels may be permuted).
std::string pattern_key(const LabeledGraph& pattern);

/// A hypergraph whose factor graph smooth-reduces (protecting V(H)) to the
/// assembled pattern. Branch nodes become hyperedges `<e>.b<k>`; links
/// between two terminals become size-2 hyperedges `<e>.l<k>`; links between
/// two branch nodes share a fresh vertex `<e>~<k>`.
Hypergraph realize_division(const Hypergraph& h, const std::vector<int>& choice,
                            const std::vector<std::vector<CanonicalTree>>& table);
Hypergraph realize_division(const Hypergraph& h, const std::vector<int>& choice);

enum class DivisionMode { Full, StarOnly };

struct DivisionSet {
    std::vector<DivisionPattern> members;  // sorted by key
    std::uint64_t raw_vectors = 0;         // size of the choice-vector product examined
};

/// One representative per topological class of divisions of H. In star-only
/// mode the set is the single all-star pattern.
DivisionSet division_set(const Hypergraph& h, DivisionMode mode = DivisionMode::Full, const DivisionCaps& caps = {});

}  // namespace himm
