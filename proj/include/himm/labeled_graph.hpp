#pragma once

#include <string>
#include <utility>
#include <vector>

#include "himm/canon.hpp"

namespace himm {

enum class NodeRole { Vertex, Edge, Added };

/// One node of a LabeledGraph. `origin` names the hypergraph vertex or edge
/// the node stands for; for added nodes it is a free annotation (the branch
/// owner, or the anchor of a densification clique). `anchor` is the node an
/// added clique member hangs off, -1 otherwise.
struct LabeledNode {
    NodeRole role = NodeRole::Added;
    std::string origin;
    int dup = 0;  // duplicate index (1..M) for vertex nodes, 0 otherwise
    std::string id;
    bool pinned = false;
    int anchor = -1;

    bool pin_eligible() const { return role == NodeRole::Vertex && dup == 1; }
};

/// Ordinary multigraph with per-node roles: factor graphs, M-generalised
/// factor graphs, densified graphs and division patterns all live here.
class LabeledGraph {
public:
    int add_node(LabeledNode node);
    int add_vertex_node(const std::string& origin, int dup, bool pinned = false);
    int add_edge_node(const std::string& origin);
    int add_added_node(const std::string& id, const std::string& origin = {}, int anchor = -1);
    void add_link(int a, int b);  // throws on loops / unknown nodes

    std::size_t node_count() const { return nodes_.size(); }
    std::size_t link_count() const { return links_.size(); }
    const std::vector<LabeledNode>& nodes() const { return nodes_; }
    const LabeledNode& node(int i) const { return nodes_.at(static_cast<std::size_t>(i)); }
    const std::vector<std::pair<int, int>>& links() const { return links_; }
    /// Neighbours with repetition for parallel links.
    const std::vector<int>& neighbors(int i) const { return adj_.at(static_cast<std::size_t>(i)); }
    std::size_t degree(int i) const { return neighbors(i).size(); }
    int find_node(const std::string& id) const;  // -1 when absent
    std::vector<int> pinned_nodes() const;

    void set_pinned(int i, bool pinned);

    /// Colour = role tag plus "+pin" when pinned; origins are ignored.
    ColoredGraph colored(bool with_pins = true) const;

    friend bool operator==(const LabeledGraph& a, const LabeledGraph& b);

private:
    std::vector<LabeledNode> nodes_;
    std::vector<std::pair<int, int>> links_;
    std::vector<std::vector<int>> adj_;
};

std::string_view role_name(NodeRole role);

/// Graphviz rendering: vertex nodes as circles (`v:<origin>#<dup>`), edge
/// nodes as squares (`e:<origin>`), added nodes as points. Node order is the
/// graph's own order.
std::string to_dot(const LabeledGraph& g, const std::string& name = "G");

bool is_bipartite_vertex_edge(const LabeledGraph& g);

}  // namespace himm
