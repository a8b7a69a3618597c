#include "himm/labeled_graph.hpp"

#include <sstream>

#include "himm/error.hpp"

namespace himm {

std::string_view role_name(NodeRole role) {
    switch (role) {
        case NodeRole::Vertex: return "vertex";
        case NodeRole::Edge: return "edge";
        case NodeRole::Added: return "added";
    }
    return "?";
}

int LabeledGraph::add_node(LabeledNode node) {
    int idx = static_cast<int>(nodes_.size());
    if (node.id.empty()) node.id = "n" + std::to_string(idx);
    nodes_.push_back(std::move(node));
    adj_.emplace_back();
    return idx;
}

int LabeledGraph::add_vertex_node(const std::string& origin, int dup, bool pinned) {
    return add_node({NodeRole::Vertex, origin, dup, "v:" + origin + "#" + std::to_string(dup), pinned, -1});
}

int LabeledGraph::add_edge_node(const std::string& origin) {
    return add_node({NodeRole::Edge, origin, 0, "e:" + origin, false, -1});
}

int LabeledGraph::add_added_node(const std::string& id, const std::string& origin, int anchor) {
    return add_node({NodeRole::Added, origin, 0, id, false, anchor});
}

void LabeledGraph::add_link(int a, int b) {
    if (a < 0 || b < 0 || static_cast<std::size_t>(a) >= nodes_.size() || static_cast<std::size_t>(b) >= nodes_.size())
        throw Error(ErrorCode::UnknownNode, "link endpoint out of range");
    if (a == b) throw Error(ErrorCode::LoopCreated, "self-link on '" + nodes_[static_cast<std::size_t>(a)].id + "'");
    links_.emplace_back(a, b);
    adj_[static_cast<std::size_t>(a)].push_back(b);
    adj_[static_cast<std::size_t>(b)].push_back(a);
}

int LabeledGraph::find_node(const std::string& id) const {
    for (std::size_t i = 0; i < nodes_.size(); ++i)
        if (nodes_[i].id == id) return static_cast<int>(i);
    return -1;
}

std::vector<int> LabeledGraph::pinned_nodes() const {
    std::vector<int> out;
    for (std::size_t i = 0; i < nodes_.size(); ++i)
        if (nodes_[i].pinned) out.push_back(static_cast<int>(i));
    return out;
}

void LabeledGraph::set_pinned(int i, bool pinned) { nodes_.at(static_cast<std::size_t>(i)).pinned = pinned; }

ColoredGraph LabeledGraph::colored(bool with_pins) const {
    ColoredGraph cg;
    for (const auto& n : nodes_) {
        std::string c(role_name(n.role));
        if (with_pins && n.pinned) c += "+pin";
        cg.colors.push_back(std::move(c));
    }
    cg.links = links_;
    return cg;
}

bool operator==(const LabeledGraph& a, const LabeledGraph& b) {
    if (a.nodes_.size() != b.nodes_.size() || a.links_ != b.links_) return false;
    for (std::size_t i = 0; i < a.nodes_.size(); ++i) {
        const auto& x = a.nodes_[i];
        const auto& y = b.nodes_[i];
        if (x.role != y.role || x.origin != y.origin || x.dup != y.dup || x.id != y.id || x.pinned != y.pinned ||
            x.anchor != y.anchor)
            return false;
    }
    return true;
}

namespace {

std::string dot_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

}  // namespace

std::string to_dot(const LabeledGraph& g, const std::string& name) {
    std::ostringstream os;
    os << "graph \"" << dot_escape(name) << "\" {\n";
    for (std::size_t i = 0; i < g.node_count(); ++i) {
        const auto& n = g.node(static_cast<int>(i));
        os << "  n" << i << " [";
        switch (n.role) {
            case NodeRole::Vertex:
                os << "shape=circle,label=\"" << dot_escape("v:" + n.origin + "#" + std::to_string(n.dup)) << "\"";
                break;
            case NodeRole::Edge: os << "shape=square,label=\"" << dot_escape("e:" + n.origin) << "\""; break;
            case NodeRole::Added: os << "shape=point,xlabel=\"" << dot_escape(n.id) << "\""; break;
        }
        if (n.pinned) os << ",peripheries=2";
        os << "];\n";
    }
    for (auto [a, b] : g.links()) os << "  n" << a << " -- n" << b << ";\n";
    os << "}\n";
    return os.str();
}

bool is_bipartite_vertex_edge(const LabeledGraph& g) {
    for (auto [a, b] : g.links()) {
        auto ra = g.node(a).role;
        auto rb = g.node(b).role;
        bool ok = (ra == NodeRole::Vertex && rb == NodeRole::Edge) || (ra == NodeRole::Edge && rb == NodeRole::Vertex);
        if (!ok) return false;
    }
    return true;
}

}  // namespace himm
