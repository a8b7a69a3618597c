#include "instances.hpp"

#include <functional>
#include <map>
#include <set>

#include "himm/isomorphism.hpp"

namespace himm::testing {

bool is_connected(const Hypergraph& g) {
    if (g.vertex_count() <= 1) return true;
    std::vector<int> all(g.vertex_count());
    std::vector<int> edges(g.edge_count());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
    for (std::size_t i = 0; i < edges.size(); ++i) edges[i] = static_cast<int>(i);
    return is_connected_cover_idx(g, edges, all);
}

std::vector<Hypergraph> enumerate_hypergraphs(int max_v, int max_e, int max_size, bool connected_only,
                                              const std::string& vprefix, const std::string& eprefix) {
    std::vector<Hypergraph> out;
    std::set<std::string> seen;
    for (int n = 1; n <= max_v; ++n) {
        std::vector<std::vector<int>> subsets;
        for (int mask = 1; mask < (1 << n); ++mask) {
            std::vector<int> s;
            for (int i = 0; i < n; ++i)
                if (mask & (1 << i)) s.push_back(i);
            if (static_cast<int>(s.size()) <= max_size) subsets.push_back(s);
        }
        // multisets of subsets, non-decreasing index order
        std::vector<int> pick;
        std::function<void(int)> rec = [&](int from) {
            Hypergraph g;
            for (int i = 0; i < n; ++i) g.add_vertex(vprefix + std::to_string(i + 1));
            for (std::size_t k = 0; k < pick.size(); ++k)
                g.add_edge_indices(eprefix + std::to_string(k + 1), subsets[static_cast<std::size_t>(pick[k])]);
            if (!connected_only || is_connected(g)) {
                if (seen.insert(canonical_key(g)).second) out.push_back(g);
            }
            if (static_cast<int>(pick.size()) == max_e) return;
            for (int s = from; s < static_cast<int>(subsets.size()); ++s) {
                pick.push_back(s);
                rec(s);
                pick.pop_back();
            }
        };
        rec(0);
    }
    return out;
}

std::vector<Hypergraph> micro_family_h() { return enumerate_hypergraphs(3, 2, 3, false, "a", "e"); }
std::vector<Hypergraph> micro_family_g() { return enumerate_hypergraphs(4, 3, 3, true, "x", "g"); }

Hypergraph random_hypergraph(std::mt19937_64& rng, int max_v, int max_e, int max_size, const std::string& vprefix,
                             const std::string& eprefix, int min_size) {
    std::uniform_int_distribution<int> nv(1, max_v);
    int n = nv(rng);
    Hypergraph g;
    for (int i = 0; i < n; ++i) g.add_vertex(vprefix + std::to_string(i + 1));
    std::uniform_int_distribution<int> ne(0, max_e);
    int m = ne(rng);
    for (int k = 0; k < m; ++k) {
        int hi = std::min(max_size, n);
        int lo = std::min(min_size, hi);
        std::uniform_int_distribution<int> sz(lo, hi);
        int s = sz(rng);
        std::vector<int> perm(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
        std::shuffle(perm.begin(), perm.end(), rng);
        perm.resize(static_cast<std::size_t>(s));
        std::sort(perm.begin(), perm.end());
        g.add_edge_indices(eprefix + std::to_string(k + 1), perm);
    }
    return g;
}

std::vector<Instance> random_instances(std::uint64_t seed, int count) {
    std::mt19937_64 rng(seed);
    std::vector<Instance> out;
    for (int i = 0; i < count; ++i) {
        Hypergraph h = random_hypergraph(rng, 5, 4, 3, "a", "e");
        Hypergraph g = random_hypergraph(rng, 5, 4, 3, "x", "g");
        out.push_back({"random-" + std::to_string(i), std::move(h), std::move(g)});
    }
    return out;
}

Hypergraph corpus(const std::string& name) {
    using E = std::vector<std::pair<EdgeId, std::vector<VertexId>>>;
    if (name == "H_e3") return Hypergraph({"a", "b", "c"}, E{{"e", {"a", "b", "c"}}});
    if (name == "H_e2") return Hypergraph({"a", "b"}, E{{"e", {"a", "b"}}});
    if (name == "H_tri") return Hypergraph({"a", "b", "c"}, E{{"ab", {"a", "b"}}, {"bc", {"b", "c"}}, {"ca", {"c", "a"}}});
    if (name == "H_par3")
        return Hypergraph({"a", "b", "c"}, E{{"f1", {"a", "b", "c"}}, {"f2", {"a", "b", "c"}}});
    if (name == "H_e4") return Hypergraph({"t1", "t2", "t3", "t4"}, E{{"e", {"t1", "t2", "t3", "t4"}}});
    if (name == "H_e5")
        return Hypergraph({"t1", "t2", "t3", "t4", "t5"}, E{{"e", {"t1", "t2", "t3", "t4", "t5"}}});
    if (name == "H_mixed")
        return Hypergraph({"a", "b", "c", "d"}, E{{"e1", {"a", "b", "c"}}, {"e2", {"c", "d"}}, {"e3", {"d"}}});
    if (name == "G_path2") return Hypergraph({"x", "y", "z"}, E{{"p1", {"x", "y"}}, {"p2", {"y", "z"}}});
    if (name == "G_e2") return Hypergraph({"x", "y"}, E{{"g", {"x", "y"}}});
    if (name == "HUB")
        return Hypergraph({"x", "y", "z", "w"}, E{{"h1", {"x", "w"}}, {"h2", {"y", "w"}}, {"h3", {"z", "w"}}});
    if (name == "K4")
        return Hypergraph({"x", "y", "z", "w"}, E{{"xy", {"x", "y"}},
                                                  {"xz", {"x", "z"}},
                                                  {"xw", {"x", "w"}},
                                                  {"yz", {"y", "z"}},
                                                  {"yw", {"y", "w"}},
                                                  {"zw", {"z", "w"}}});
    if (name == "K4_3")
        return Hypergraph({"a", "b", "c", "d"}, E{{"e1", {"a", "b", "c"}},
                                                  {"e2", {"a", "b", "d"}},
                                                  {"e3", {"a", "c", "d"}},
                                                  {"e4", {"b", "c", "d"}}});
    if (name == "CAT4")
        return Hypergraph({"t1", "t2", "t3", "t4", "w1", "w2", "x"}, E{{"g1", {"w1", "t1"}},
                                                                      {"g2", {"w1", "t2"}},
                                                                      {"g3", {"w1", "x"}},
                                                                      {"g4", {"x", "w2"}},
                                                                      {"g5", {"w2", "t3"}},
                                                                      {"g6", {"w2", "t4"}}});
    if (name == "CHAIN5")
        return Hypergraph({"x1", "x2", "x3", "x4", "x5"},
                          E{{"g1", {"x1", "x3", "x5"}}, {"g2", {"x2", "x4"}}, {"g3", {"x4", "x5"}}});
    throw Error(ErrorCode::InvalidArgument, "no corpus entry named " + name);
}

std::vector<std::string> corpus_names() {
    return {"H_e3", "H_e2", "H_tri", "H_par3", "H_e4", "H_e5", "H_mixed", "G_path2", "G_e2", "HUB", "K4", "K4_3", "CAT4", "CHAIN5"};
}

}  // namespace himm::testing
