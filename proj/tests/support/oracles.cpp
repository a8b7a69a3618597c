#include "oracles.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "himm/canon.hpp"

namespace himm::testing {

namespace {

struct Brute {
    const LabeledGraph& pattern;
    const LabeledGraph& host;
    const PinConstraint& pins;
    std::vector<int> map;
    std::vector<char> host_used;  // image or path interior
    std::map<std::pair<int, int>, int> direct_used;

    int multiplicity(int u, int v) const {
        int m = 0;
        for (int w : host.neighbors(u))
            if (w == v) ++m;
        return m;
    }

    bool place(std::size_t p) {
        if (p == pattern.node_count()) return route(0);
        for (std::size_t h = 0; h < host.node_count(); ++h) {
            if (host_used[h]) continue;
            const int pi = static_cast<int>(p);
            if (pins.is_pinned(pi)) {
                const LabeledNode& hn = host.node(static_cast<int>(h));
                if (!hn.pin_eligible()) continue;
                bool clash = false;
                for (std::size_t q = 0; q < p; ++q)
                    if (pins.is_pinned(static_cast<int>(q)) && host.node(map[q]).origin == hn.origin) clash = true;
                if (clash) continue;
            }
            map[p] = static_cast<int>(h);
            host_used[h] = 1;
            if (place(p + 1)) return true;
            host_used[h] = 0;
        }
        return false;
    }

    bool route(std::size_t l) {
        if (l == pattern.link_count()) return true;
        auto [a, b] = pattern.links()[l];
        const int s = map[static_cast<std::size_t>(a)];
        const int t = map[static_cast<std::size_t>(b)];
        std::vector<int> path{s};
        return walk(l, s, t, path);
    }

    bool walk(std::size_t l, int cur, int t, std::vector<int>& path) {
        std::set<int> tried;
        for (int nb : host.neighbors(cur)) {
            if (!tried.insert(nb).second) continue;
            if (nb == t) {
                if (path.size() == 1) {
                    auto key = std::minmax(cur, t);
                    if (direct_used[key] >= multiplicity(cur, t)) continue;
                    ++direct_used[key];
                    if (route(l + 1)) return true;
                    --direct_used[key];
                } else if (route(l + 1)) {
                    return true;
                }
                continue;
            }
            if (host_used[static_cast<std::size_t>(nb)]) continue;
            host_used[static_cast<std::size_t>(nb)] = 1;
            path.push_back(nb);
            if (walk(l, nb, t, path)) return true;
            path.pop_back();
            host_used[static_cast<std::size_t>(nb)] = 0;
        }
        return false;
    }
};

std::vector<std::pair<int, int>> decode(const std::vector<int>& seq, int n) {
    std::vector<std::pair<int, int>> links;
    if (n == 2) return {{0, 1}};
    std::vector<int> deg(static_cast<std::size_t>(n), 1);
    for (int x : seq) ++deg[static_cast<std::size_t>(x)];
    for (int x : seq) {
        for (int j = 0; j < n; ++j) {
            if (deg[static_cast<std::size_t>(j)] == 1) {
                links.emplace_back(std::min(j, x), std::max(j, x));
                --deg[static_cast<std::size_t>(j)];
                --deg[static_cast<std::size_t>(x)];
                break;
            }
        }
    }
    int u = -1;
    for (int j = 0; j < n; ++j)
        if (deg[static_cast<std::size_t>(j)] == 1) {
            if (u < 0) {
                u = j;
            } else {
                links.emplace_back(u, j);
            }
        }
    return links;
}

}  // namespace

bool brute_force_embeds(const LabeledGraph& pattern, const LabeledGraph& host, const PinConstraint& pins) {
    if (pattern.node_count() > host.node_count()) return false;
    Brute b{pattern, host, pins, std::vector<int>(pattern.node_count(), -1), std::vector<char>(host.node_count(), 0), {}};
    return b.place(0);
}

std::vector<std::vector<std::pair<int, int>>> pruefer_topologies(int r) {
    std::vector<std::vector<std::pair<int, int>>> out;
    if (r <= 1) return {{}};
    std::set<std::string> seen;
    for (int n = r; n <= 2 * r - 2; ++n) {
        std::vector<int> seq(static_cast<std::size_t>(n - 2), 0);
        while (true) {
            auto links = decode(seq, n);
            std::vector<int> deg(static_cast<std::size_t>(n), 0);
            for (auto [a, b] : links) {
                ++deg[static_cast<std::size_t>(a)];
                ++deg[static_cast<std::size_t>(b)];
            }
            bool ok = true;
            for (int j = 0; j < n; ++j) {
                if (j < r) continue;
                if (deg[static_cast<std::size_t>(j)] < 3) ok = false;
            }
            if (ok) {
                ColoredGraph cg;
                for (int j = 0; j < n; ++j) cg.colors.push_back(j < r ? "t" + std::to_string(j) : "b");
                cg.links = links;
                if (seen.insert(canonical_form(cg).certificate).second) out.push_back(links);
            }
            // odometer
            std::size_t k = 0;
            while (k < seq.size() && ++seq[k] == n) seq[k++] = 0;
            if (k == seq.size()) break;
        }
    }
    return out;
}

std::uint64_t pruefer_division_count(int r) { return pruefer_topologies(r).size(); }

std::uint64_t division_class_count_oracle(const Hypergraph& h) {
    std::map<int, std::vector<std::vector<std::pair<int, int>>>> by_size;
    for (const auto& e : h.edges()) {
        int r = static_cast<int>(e.vertices.size());
        if (!by_size.count(r)) by_size[r] = pruefer_topologies(r);
    }
    std::vector<std::size_t> choice(h.edge_count(), 0);
    std::set<std::string> seen;
    while (true) {
        ColoredGraph cg;
        cg.colors.assign(h.vertex_count(), "v");
        for (std::size_t i = 0; i < h.edge_count(); ++i) {
            const auto& e = h.edge(static_cast<int>(i));
            const int r = static_cast<int>(e.vertices.size());
            const auto& topo = by_size[r][choice[i]];
            std::map<int, int> node_of;
            for (int k = 0; k < r; ++k) node_of[k] = e.vertices[static_cast<std::size_t>(k)];
            for (auto [a, b] : topo) {
                for (int x : {a, b})
                    if (!node_of.count(x)) {
                        node_of[x] = static_cast<int>(cg.colors.size());
                        cg.colors.push_back("b");
                    }
                cg.links.emplace_back(node_of[a], node_of[b]);
            }
        }
        seen.insert(canonical_form(cg).certificate);
        std::size_t k = 0;
        while (k < choice.size()) {
            const int r = static_cast<int>(h.edge(static_cast<int>(k)).vertices.size());
            if (++choice[k] < by_size[r].size()) break;
            choice[k++] = 0;
        }
        if (k == choice.size()) break;
    }
    return seen.size();
}

}  // namespace himm::testing
