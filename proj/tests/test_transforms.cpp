#include "doctest.h"

#include <algorithm>
#include <random>

#include "himm/transforms.hpp"
#include "instances.hpp"

using namespace himm;
using himm::testing::corpus;
using E = std::vector<std::pair<EdgeId, std::vector<VertexId>>>;

namespace {

std::vector<int> degrees_of(const LabeledGraph& g, NodeRole role) {
    std::vector<int> d;
    for (int i = 0; i < static_cast<int>(g.node_count()); ++i)
        if (g.node(i).role == role) d.push_back(static_cast<int>(g.degree(i)));
    return d;
}

bool same_shape(const LabeledGraph& a, const LabeledGraph& b) {
    return canonical_form(a.colored(true)).certificate == canonical_form(b.colored(true)).certificate;
}

}  // namespace

TEST_CASE("factor_graph") {
    LabeledGraph star = factor_graph(corpus("H_e3"));
    CHECK(star.node_count() == 4);
    CHECK(degrees_of(star, NodeRole::Edge) == std::vector<int>{3});
    CHECK(star.node(0).id == "v:a#1");
    CHECK(star.node(3).id == "e:e");

    LabeledGraph path = factor_graph(corpus("G_path2"));
    CHECK(path.node_count() == 5);
    CHECK(path.link_count() == 4);
    CHECK(degrees_of(path, NodeRole::Vertex) == std::vector<int>{1, 2, 1});

    LabeledGraph bare = factor_graph(Hypergraph({"a", "b"}, E{}));
    CHECK(bare.node_count() == 2);
    CHECK(bare.link_count() == 0);
}

TEST_CASE("m_factor_graph") {
    for (const auto& n : himm::testing::corpus_names()) {
        Hypergraph g = corpus(n);
        CHECK(m_factor_graph(g, 1) == factor_graph(g));
    }
    LabeledGraph e = m_factor_graph(corpus("G_e2"), 3);
    CHECK(e.node_count() == 7);
    CHECK(degrees_of(e, NodeRole::Edge) == std::vector<int>{6});

    LabeledGraph p = m_factor_graph(corpus("G_path2"), 2);
    CHECK(p.node_count() == 8);
    CHECK(degrees_of(p, NodeRole::Edge) == std::vector<int>{4, 4});
    CHECK(p.node(m_factor_vertex_node(1, 2, 2)).id == "v:y#2");
    CHECK(p.node(m_factor_edge_node(corpus("G_path2"), 1, 2)).id == "e:p2");
    for (const auto& nd : p.nodes())
        if (nd.role == NodeRole::Vertex) CHECK((nd.dup >= 1 && nd.dup <= 2));
}

TEST_CASE("densify") {
    LabeledGraph x = factor_graph(corpus("G_e2"));
    std::vector<int> t{0};
    LabeledGraph d = densify(x, t, 2);
    CHECK(d.node_count() == x.node_count() + 1);
    CHECK(d.link_count() == x.link_count() + 1);

    LabeledGraph p = m_factor_graph(corpus("G_path2"), 2);
    LabeledGraph pd = densify(p, first_duplicates(p), 6);
    CHECK(pd.node_count() == p.node_count() + 15);
    CHECK(first_duplicates(p).size() == 3);
}

TEST_CASE("default_params") {
    Params p = default_params(corpus("H_e2"), corpus("G_path2"));
    CHECK(p.M == 3);
    CHECK(p.L == 34);
    CHECK(p.mode == DensifyMode::Pin);
    CHECK(default_params(Hypergraph({"a"}, E{}), corpus("G_path2")).M == 1);
    Hypergraph two({"a", "b", "c"}, E{{"e1", {"a", "b"}}, {"e2", {"b", "c"}}});
    Params q = default_params(two, corpus("G_path2"));
    CHECK(q.M == 5);
    CHECK(q.M > two.edge_count());
}

TEST_CASE("subdivide and smooth_reduce") {
    LabeledGraph f = factor_graph(corpus("G_path2"));
    std::vector<int> prot{0, 1, 2};
    LabeledGraph r = smooth_reduce(f, prot);
    CHECK(r.node_count() == 3);
    CHECK(r.link_count() == 2);
    CHECK(degrees_of(r, NodeRole::Vertex) == std::vector<int>{1, 2, 1});

    LabeledGraph star = factor_graph(corpus("H_e3"));
    std::vector<int> leaves{0, 1, 2};
    CHECK(smooth_reduce(star, leaves) == star);

    for (std::size_t l = 0; l < star.link_count(); ++l) CHECK(smooth_reduce(subdivide(star, l), leaves) == star);

    Hypergraph par({"a", "b"}, E{{"e1", {"a", "b"}}, {"e2", {"a", "b"}}});
    std::vector<int> ab{0, 1};
    LabeledGraph two = smooth_reduce(factor_graph(par), ab);
    CHECK(two.link_count() == 2);

    CHECK_THROWS_AS(smooth_reduce(factor_graph(corpus("H_tri")), std::vector<int>{}), Error);
}

TEST_CASE("property: size identities") {
    std::mt19937_64 rng(21);
    for (int i = 0; i < 100; ++i) {
        Hypergraph g = himm::testing::random_hypergraph(rng, 6, 6, 4, "v", "f");
        std::uint64_t M = 1 + rng() % 5, L = 1 + rng() % 7;
        const std::uint64_t nv = g.vertex_count(), ne = g.edge_count();
        CHECK(factor_graph(g).node_count() == nv + ne);
        LabeledGraph m = m_factor_graph(g, M);
        CHECK(m.node_count() == M * nv + ne);
        CHECK(is_bipartite_vertex_edge(m));
        LabeledGraph d = densify(m, first_duplicates(m), L);
        CHECK(d.node_count() == M * nv + ne + (L - 1) * nv);
    }
}

TEST_CASE("property: densify keeps cliques local and is removable") {
    std::mt19937_64 rng(22);
    for (int i = 0; i < 60; ++i) {
        Hypergraph g = himm::testing::random_hypergraph(rng, 5, 4, 3, "v", "f");
        LabeledGraph m = m_factor_graph(g, 2);
        std::uint64_t L = 2 + rng() % 4;
        LabeledGraph d = densify(m, first_duplicates(m), L);
        const int base = static_cast<int>(m.node_count());
        for (auto [a, b] : d.links()) {
            if (a < base && b < base) continue;
            int ga = a < base ? a : d.node(a).anchor;
            int gb = b < base ? b : d.node(b).anchor;
            CHECK(ga == gb);
        }
        LabeledGraph back;
        for (int n = 0; n < base; ++n) back.add_node(d.node(n));
        for (auto [a, b] : d.links())
            if (a < base && b < base) back.add_link(a, b);
        CHECK(back == m);
    }
}

TEST_CASE("property: smooth_reduce is confluent") {
    std::mt19937_64 rng(23);
    for (int i = 0; i < 100; ++i) {
        Hypergraph g = himm::testing::random_hypergraph(rng, 6, 5, 3, "v", "f");
        LabeledGraph f = factor_graph(g);
        std::vector<int> prot;
        for (int v = 0; v < static_cast<int>(g.vertex_count()); ++v)
            if (rng() % 2) prot.push_back(v);
        LabeledGraph first;
        try {
            first = smooth_reduce(f, prot);
        } catch (const Error&) {
            continue;
        }
        for (int k = 0; k < 5; ++k) {
            std::vector<int> order(f.node_count());
            for (std::size_t j = 0; j < order.size(); ++j) order[j] = static_cast<int>(j);
            std::shuffle(order.begin(), order.end(), rng);
            CHECK(same_shape(smooth_reduce_ordered(f, prot, order), first));
        }
    }
}
