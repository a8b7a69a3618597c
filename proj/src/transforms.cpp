#include "himm/transforms.hpp"

#include <algorithm>
#include <numeric>

namespace himm {

std::string_view mode_name(DensifyMode mode) { return mode == DensifyMode::Pin ? "pin" : "literalDensify"; }

LabeledGraph factor_graph(const Hypergraph& g) { return m_factor_graph(g, 1); }

LabeledGraph m_factor_graph(const Hypergraph& g, std::uint64_t M) {
    if (M == 0) throw Error(ErrorCode::InvalidArgument, "M must be positive");
    LabeledGraph out;
    for (const auto& v : g.vertices())
        for (std::uint64_t d = 1; d <= M; ++d) out.add_vertex_node(v, static_cast<int>(d));
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
        int node = out.add_edge_node(g.edge(static_cast<int>(e)).id);
        for (int v : g.edge(static_cast<int>(e)).vertices)
            for (std::uint64_t d = 1; d <= M; ++d) out.add_link(m_factor_vertex_node(v, static_cast<int>(d), M), node);
    }
    return out;
}

LabeledGraph densify(const LabeledGraph& x, std::span<const int> targets, std::uint64_t L) {
    if (targets.empty()) throw Error(ErrorCode::InvalidArgument, "densify needs at least one target");
    if (L < 1) throw Error(ErrorCode::InvalidArgument, "clique size L must be positive");
    constexpr std::uint64_t kMaxAddedLinks = 20'000'000;
    if ((L - 1) * L / 2 > kMaxAddedLinks / targets.size())
        throw Error(ErrorCode::CapExceeded, "densified graph would exceed " + std::to_string(kMaxAddedLinks) + " links");
    for (int t : targets)
        if (t < 0 || static_cast<std::size_t>(t) >= x.node_count())
            throw Error(ErrorCode::UnknownNode, "densify target " + std::to_string(t));

    LabeledGraph out = x;
    for (int t : targets) {
        std::vector<int> clique{t};
        const auto& anchor = x.node(t);
        for (std::uint64_t k = 1; k < L; ++k)
            clique.push_back(out.add_added_node("k:" + anchor.id + ":" + std::to_string(k), anchor.origin, t));
        for (std::size_t i = 0; i < clique.size(); ++i)
            for (std::size_t j = i + 1; j < clique.size(); ++j) out.add_link(clique[i], clique[j]);
    }
    return out;
}

std::vector<int> first_duplicates(const LabeledGraph& host) {
    std::vector<int> out;
    for (std::size_t i = 0; i < host.node_count(); ++i)
        if (host.node(static_cast<int>(i)).pin_eligible()) out.push_back(static_cast<int>(i));
    return out;
}

Params default_params(const Hypergraph& h, const Hypergraph& g) {
    Params p;
    p.M = 1;
    for (const auto& e : h.edges()) {
        std::uint64_t r = e.vertices.size();
        p.M += std::max<std::uint64_t>(2 * r >= 2 ? 2 * r - 2 : 0, 1);
    }
    p.L = 1 + p.M * (p.M * g.vertex_count() + g.edge_count());
    p.mode = DensifyMode::Pin;
    return p;
}

LabeledGraph subdivide(const LabeledGraph& x, std::size_t link_index) {
    if (link_index >= x.link_count()) throw Error(ErrorCode::IndexOutOfRange, "link " + std::to_string(link_index));
    LabeledGraph out;
    for (const auto& n : x.nodes()) out.add_node(n);
    auto [a, b] = x.links()[link_index];
    int w = out.add_added_node("s:" + std::to_string(x.node_count()));
    for (std::size_t i = 0; i < x.link_count(); ++i) {
        if (i == link_index) continue;
        out.add_link(x.links()[i].first, x.links()[i].second);
    }
    out.add_link(a, w);
    out.add_link(w, b);
    return out;
}

LabeledGraph smooth_reduce_ordered(const LabeledGraph& x, std::span<const int> protected_nodes,
                                   std::span<const int> removal_priority) {
    const std::size_t n = x.node_count();
    std::vector<char> prot(n, 0), alive(n, 1);
    for (int p : protected_nodes) {
        if (p < 0 || static_cast<std::size_t>(p) >= n) throw Error(ErrorCode::UnknownNode, "protected " + std::to_string(p));
        prot[static_cast<std::size_t>(p)] = 1;
    }
    std::vector<std::vector<int>> adj(n);
    for (std::size_t i = 0; i < n; ++i) adj[i] = x.neighbors(static_cast<int>(i));

    auto erase_one = [&](int from, int value) {
        auto& v = adj[static_cast<std::size_t>(from)];
        v.erase(std::find(v.begin(), v.end(), value));
    };

    bool changed = true;
    while (changed) {
        changed = false;
        for (int w : removal_priority) {
            auto wi = static_cast<std::size_t>(w);
            if (!alive[wi] || prot[wi] || adj[wi].size() != 2) continue;
            int a = adj[wi][0];
            int b = adj[wi][1];
            if (a == b)
                throw Error(ErrorCode::LoopCreated, "smoothing '" + x.node(w).id + "' would create a loop on '" +
                                                        x.node(a).id + "'");
            erase_one(a, w);
            erase_one(b, w);
            adj[static_cast<std::size_t>(a)].push_back(b);
            adj[static_cast<std::size_t>(b)].push_back(a);
            adj[wi].clear();
            alive[wi] = 0;
            changed = true;
        }
    }

    LabeledGraph out;
    std::vector<int> remap(n, -1);
    for (std::size_t i = 0; i < n; ++i)
        if (alive[i]) remap[i] = out.add_node(x.node(static_cast<int>(i)));
    for (std::size_t u = 0; u < n; ++u) {
        if (!alive[u]) continue;
        auto nb = adj[u];
        std::sort(nb.begin(), nb.end());
        for (int v : nb)
            if (static_cast<std::size_t>(v) > u) out.add_link(remap[u], remap[static_cast<std::size_t>(v)]);
    }
    return out;
}

LabeledGraph smooth_reduce(const LabeledGraph& x, std::span<const int> protected_nodes) {
    std::vector<int> order(x.node_count());
    std::iota(order.begin(), order.end(), 0);
    return smooth_reduce_ordered(x, protected_nodes, order);
}

}  // namespace himm
