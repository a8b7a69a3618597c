#include "himm/divisions.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "himm/canon.hpp"

namespace himm {
namespace {

// Working tree during incremental generation: label >= 0 is a terminal
// position, -1 a branch node.
struct RawTree {
    std::vector<int> label;
    std::vector<std::pair<int, int>> links;
};

std::string encode(const RawTree& t, const std::vector<std::vector<int>>& adj, int u, int parent) {
    std::vector<std::string> kids;
    for (int v : adj[static_cast<std::size_t>(u)])
        if (v != parent) kids.push_back(encode(t, adj, v, u));
    std::sort(kids.begin(), kids.end());
    std::string s = t.label[static_cast<std::size_t>(u)] >= 0 ? "t" + std::to_string(t.label[static_cast<std::size_t>(u)]) : "b";
    s += '(';
    for (std::size_t i = 0; i < kids.size(); ++i) {
        if (i) s += ',';
        s += kids[i];
    }
    s += ')';
    return s;
}

// Terminal-labelled canonical string: AHU encoding rooted at terminal 0.
std::string tree_key(const RawTree& t) {
    std::vector<std::vector<int>> adj(t.label.size());
    for (auto [a, b] : t.links) {
        adj[static_cast<std::size_t>(a)].push_back(b);
        adj[static_cast<std::size_t>(b)].push_back(a);
    }
    int root = static_cast<int>(std::find(t.label.begin(), t.label.end(), 0) - t.label.begin());
    return encode(t, adj, root, -1);
}

// Each valid tree on k+1 terminals arises from one on k terminals by one of:
// hanging the new terminal off a node, subdividing a link with it,
// subdividing a link with a new branch node carrying it as a leaf, or
// labelling an existing branch node with it.
std::vector<RawTree> extend(const RawTree& t, int k) {
    std::vector<RawTree> out;
    const int n = static_cast<int>(t.label.size());
    for (int x = 0; x < n; ++x) {
        RawTree c = t;
        c.label.push_back(k);
        c.links.emplace_back(x, n);
        out.push_back(std::move(c));
    }
    for (std::size_t i = 0; i < t.links.size(); ++i) {
        auto [a, b] = t.links[i];
        RawTree c = t;
        c.label.push_back(k);
        c.links[i] = {a, n};
        c.links.emplace_back(n, b);
        out.push_back(std::move(c));

        RawTree d = t;
        d.label.push_back(-1);  // branch node n
        d.label.push_back(k);   // terminal n+1
        d.links[i] = {a, n};
        d.links.emplace_back(n, b);
        d.links.emplace_back(n, n + 1);
        out.push_back(std::move(d));
    }
    for (int x = 0; x < n; ++x) {
        if (t.label[static_cast<std::size_t>(x)] >= 0) continue;
        RawTree c = t;
        c.label[static_cast<std::size_t>(x)] = k;
        out.push_back(std::move(c));
    }
    return out;
}

CanonicalTree to_canonical(const RawTree& t, const std::vector<VertexId>& terminals, std::string key) {
    const int r = static_cast<int>(terminals.size());
    std::vector<int> remap(t.label.size());
    int next_branch = r;
    for (std::size_t i = 0; i < t.label.size(); ++i) remap[i] = t.label[i] >= 0 ? t.label[i] : next_branch++;
    CanonicalTree ct;
    ct.terminals = terminals;
    ct.branch_count = next_branch - r;
    for (auto [a, b] : t.links) {
        int x = remap[static_cast<std::size_t>(a)];
        int y = remap[static_cast<std::size_t>(b)];
        ct.links.emplace_back(std::min(x, y), std::max(x, y));
    }
    std::sort(ct.links.begin(), ct.links.end());
    ct.key = std::move(key);
    return ct;
}

}  // namespace

bool CanonicalTree::is_star() const {
    const int r = static_cast<int>(terminals.size());
    if (r <= 2) return true;
    if (branch_count != 1 || links.size() != terminals.size()) return false;
    return std::all_of(links.begin(), links.end(), [&](auto l) { return l.second == r && l.first < r; });
}

bool satisfies_tree_invariants(const CanonicalTree& t) {
    const std::size_t n = t.node_count();
    const std::size_t r = t.terminals.size();
    if (r == 0 || n == 0) return false;
    if (t.links.size() != n - 1) return false;
    std::vector<int> deg(n, 0), parent(n);
    for (std::size_t i = 0; i < n; ++i) parent[i] = static_cast<int>(i);
    std::function<int(int)> find = [&](int x) {
        return parent[static_cast<std::size_t>(x)] == x ? x : parent[static_cast<std::size_t>(x)] = find(parent[static_cast<std::size_t>(x)]);
    };
    for (auto [a, b] : t.links) {
        if (a < 0 || b < 0 || static_cast<std::size_t>(a) >= n || static_cast<std::size_t>(b) >= n || a == b) return false;
        ++deg[static_cast<std::size_t>(a)];
        ++deg[static_cast<std::size_t>(b)];
        int ra = find(a), rb = find(b);
        if (ra == rb) return false;  // cycle
        parent[static_cast<std::size_t>(ra)] = rb;
    }
    for (std::size_t v = r; v < n; ++v)
        if (deg[v] < 3) return false;  // branch leaves and degree-2 branch nodes
    std::size_t bound = r >= 2 ? r - 2 : 0;
    return static_cast<std::size_t>(t.branch_count) <= bound;
}

std::vector<CanonicalTree> enumerate_edge_divisions(const std::vector<VertexId>& terminals, const DivisionCaps& caps) {
    const std::size_t r = terminals.size();
    if (r == 0) throw Error(ErrorCode::InvalidArgument, "a hyperedge needs at least one terminal");
    if (r > caps.max_edge_size)
        throw Error(ErrorCode::CapExceeded, "hyperedge of size " + std::to_string(r) + " exceeds the division cap of " +
                                                std::to_string(caps.max_edge_size));

    std::map<std::string, RawTree> level;
    RawTree seed;
    seed.label = {0};
    level.emplace(tree_key(seed), seed);
    for (std::size_t k = 1; k < r; ++k) {
        std::map<std::string, RawTree> next;
        for (const auto& [key, t] : level)
            for (auto& c : extend(t, static_cast<int>(k))) {
                auto ck = tree_key(c);
                next.try_emplace(std::move(ck), std::move(c));
            }
        level = std::move(next);
    }

    std::vector<CanonicalTree> out;
    for (const auto& [key, t] : level) {
        auto ct = to_canonical(t, terminals, key);
        if (!satisfies_tree_invariants(ct))
            throw Error(ErrorCode::InvalidArgument, "internal: generated tree violates invariants: " + key);
        out.push_back(std::move(ct));
    }
    std::stable_sort(out.begin(), out.end(), [](const CanonicalTree& a, const CanonicalTree& b) {
        if (a.is_star() != b.is_star()) return a.is_star();
        return a.key < b.key;
    });
    return out;
}

std::vector<std::vector<CanonicalTree>> edge_division_table(const Hypergraph& h, const DivisionCaps& caps) {
    std::vector<std::vector<CanonicalTree>> table;
    for (std::size_t e = 0; e < h.edge_count(); ++e)
        table.push_back(enumerate_edge_divisions(h.edge_vertex_ids(static_cast<int>(e)), caps));
    return table;
}

DivisionPattern assemble_pattern(const Hypergraph& h, const std::vector<int>& choice,
                                 const std::vector<std::vector<CanonicalTree>>& table) {
    if (choice.size() != h.edge_count() || table.size() != h.edge_count())
        throw Error(ErrorCode::IndexOutOfRange, "choice vector length must equal the number of hyperedges");
    DivisionPattern p;
    p.choice = choice;
    for (const auto& v : h.vertices()) {
        p.graph.add_vertex_node(v, 1, true);
        p.node_owner.push_back(-1);
    }
    for (std::size_t e = 0; e < h.edge_count(); ++e) {
        const auto& options = table[e];
        int c = choice[e];
        if (c < 0 || static_cast<std::size_t>(c) >= options.size())
            throw Error(ErrorCode::IndexOutOfRange, "choice " + std::to_string(c) + " for edge '" +
                                                        h.edge(static_cast<int>(e)).id + "'");
        const auto& tree = options[static_cast<std::size_t>(c)];
        const auto& verts = h.edge(static_cast<int>(e)).vertices;
        const int r = static_cast<int>(verts.size());
        std::vector<int> node_of(tree.node_count());
        for (int j = 0; j < r; ++j) node_of[static_cast<std::size_t>(j)] = verts[static_cast<std::size_t>(j)];
        for (int b = 0; b < tree.branch_count; ++b) {
            const auto& eid = h.edge(static_cast<int>(e)).id;
            node_of[static_cast<std::size_t>(r + b)] = p.graph.add_added_node("b:" + eid + ":" + std::to_string(b), eid);
            p.node_owner.push_back(static_cast<int>(e));
        }
        for (auto [a, b] : tree.links) {
            p.graph.add_link(node_of[static_cast<std::size_t>(a)], node_of[static_cast<std::size_t>(b)]);
            p.link_owner.push_back(static_cast<int>(e));
        }
    }
    p.key = pattern_key(p.graph);
    return p;
}

DivisionPattern assemble_pattern(const Hypergraph& h, const std::vector<int>& choice) {
    return assemble_pattern(h, choice, edge_division_table(h));
}

std::string pattern_key(const LabeledGraph& pattern) { return canonical_form(pattern.colored(true)).certificate; }

Hypergraph realize_division(const Hypergraph& h, const std::vector<int>& choice,
                            const std::vector<std::vector<CanonicalTree>>& table) {
    if (choice.size() != h.edge_count() || table.size() != h.edge_count())
        throw Error(ErrorCode::IndexOutOfRange, "choice vector length must equal the number of hyperedges");
    Hypergraph out;
    for (const auto& v : h.vertices()) out.add_vertex(v);

    // Fresh vertices first so edge construction can reference them.
    struct Pending {
        EdgeId id;
        std::vector<int> vertices;
    };
    std::vector<Pending> pending;
    for (std::size_t e = 0; e < h.edge_count(); ++e) {
        int c = choice[e];
        if (c < 0 || static_cast<std::size_t>(c) >= table[e].size())
            throw Error(ErrorCode::IndexOutOfRange, "choice " + std::to_string(c) + " for edge '" +
                                                        h.edge(static_cast<int>(e)).id + "'");
        const auto& tree = table[e][static_cast<std::size_t>(c)];
        const auto& eid = h.edge(static_cast<int>(e)).id;
        const auto& verts = h.edge(static_cast<int>(e)).vertices;
        const int r = static_cast<int>(verts.size());

        if (tree.links.empty()) {  // r == 1: the hyperedge stays as it is
            pending.push_back({eid, verts});
            continue;
        }
        std::vector<std::vector<int>> branch_members(static_cast<std::size_t>(tree.branch_count));
        std::vector<Pending> term_links;
        int fresh = 0;
        for (auto [a, b] : tree.links) {
            bool ta = a < r, tb = b < r;
            if (ta && tb) {
                term_links.push_back({"", {verts[static_cast<std::size_t>(a)], verts[static_cast<std::size_t>(b)]}});
            } else if (ta || tb) {
                int t = ta ? a : b;
                int br = (ta ? b : a) - r;
                branch_members[static_cast<std::size_t>(br)].push_back(verts[static_cast<std::size_t>(t)]);
            } else {
                int z = out.add_vertex(out.fresh_vertex_id(eid + "~" + std::to_string(fresh++)));
                branch_members[static_cast<std::size_t>(a - r)].push_back(z);
                branch_members[static_cast<std::size_t>(b - r)].push_back(z);
            }
        }
        const bool single = branch_members.size() + term_links.size() == 1;
        for (std::size_t b = 0; b < branch_members.size(); ++b)
            pending.push_back({single ? eid : eid + ".b" + std::to_string(b), branch_members[b]});
        for (std::size_t i = 0; i < term_links.size(); ++i)
            pending.push_back({single ? eid : eid + ".l" + std::to_string(i), term_links[i].vertices});
    }
    for (auto& p : pending) out.add_edge_indices(out.fresh_edge_id(p.id), p.vertices);
    return out;
}

Hypergraph realize_division(const Hypergraph& h, const std::vector<int>& choice) {
    return realize_division(h, choice, edge_division_table(h));
}

DivisionSet division_set(const Hypergraph& h, DivisionMode mode, const DivisionCaps& caps) {
    auto table = edge_division_table(h, caps);
    DivisionSet result;
    if (mode == DivisionMode::StarOnly) {
        result.members.push_back(assemble_pattern(h, std::vector<int>(h.edge_count(), 0), table));
        result.raw_vectors = 1;
        return result;
    }

    std::uint64_t raw = 1;
    const std::uint64_t raw_cap = caps.max_members * 50;
    for (const auto& options : table) {
        if (raw > raw_cap / std::max<std::uint64_t>(options.size(), 1))
            throw Error(ErrorCode::CapExceeded, "division product exceeds " + std::to_string(raw_cap) + " choice vectors");
        raw *= options.size();
    }
    result.raw_vectors = raw;

    std::map<std::string, DivisionPattern> classes;
    std::vector<int> choice(h.edge_count(), 0);
    while (true) {
        auto p = assemble_pattern(h, choice, table);
        if (!classes.contains(p.key)) {
            if (classes.size() >= caps.max_members)
                throw Error(ErrorCode::CapExceeded, "division set exceeds " + std::to_string(caps.max_members) + " members");
            std::string key = p.key;
            classes.emplace(std::move(key), std::move(p));
        }
        // odometer, last edge fastest
        std::size_t i = choice.size();
        while (i > 0) {
            --i;
            if (static_cast<std::size_t>(++choice[i]) < table[i].size()) break;
            choice[i] = 0;
            if (i == 0) {
                i = choice.size() + 1;
                break;
            }
        }
        if (choice.empty() || i == choice.size() + 1) break;
    }
    for (auto& [key, p] : classes) result.members.push_back(std::move(p));
    return result;
}

}  // namespace himm
