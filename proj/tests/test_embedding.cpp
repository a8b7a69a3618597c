#include "doctest.h"

#include <random>

#include "himm/divisions.hpp"
#include "himm/embedding.hpp"
#include "himm/transforms.hpp"
#include "instances.hpp"
#include "oracles.hpp"

using namespace himm;
using himm::testing::corpus;

namespace {

LabeledGraph plain(int n, const std::vector<std::pair<int, int>>& links) {
    LabeledGraph g;
    for (int i = 0; i < n; ++i) g.add_added_node("n" + std::to_string(i));
    for (auto [a, b] : links) g.add_link(a, b);
    return g;
}

LabeledGraph star3() { return plain(4, {{0, 1}, {0, 2}, {0, 3}}); }

LabeledGraph random_graph(std::mt19937_64& rng, int max_n, int max_links) {
    int n = 1 + static_cast<int>(rng() % static_cast<unsigned>(max_n));
    std::vector<std::pair<int, int>> links;
    int m = static_cast<int>(rng() % static_cast<unsigned>(max_links + 1));
    for (int k = 0; k < m && n > 1; ++k) {
        int a = static_cast<int>(rng() % static_cast<unsigned>(n));
        int b = static_cast<int>(rng() % static_cast<unsigned>(n));
        if (a != b) links.emplace_back(a, b);
    }
    return plain(n, links);
}

bool found(const LabeledGraph& p, const LabeledGraph& h, const PinConstraint& pins) {
    EmbedResult r = find_embedding(p, h, pins);
    if (r.status == EmbedStatus::Found) {
        std::string why;
        CHECK_MESSAGE(verify_embedding(p, h, pins, *r.witness, &why), why);
    }
    return r.status == EmbedStatus::Found;
}

}  // namespace

TEST_CASE("basic examples") {
    LabeledGraph s = star3();
    auto none = PinConstraint::none(4);
    CHECK(found(s, s, none));
    CHECK_FALSE(found(s, plain(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}}), none));

    LabeledGraph tri = plain(3, {{0, 1}, {1, 2}, {2, 0}});
    LabeledGraph c6 = plain(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0}});
    EmbedResult r = find_embedding(tri, c6, PinConstraint::none(3));
    REQUIRE(r.status == EmbedStatus::Found);
    CHECK(verify_embedding(tri, c6, PinConstraint::none(3), *r.witness));
}

TEST_CASE("pinned star in the M = 2 factor graph of PATH2") {
    DivisionPattern p = assemble_pattern(corpus("H_e3"), {0});
    LabeledGraph host = m_factor_graph(corpus("G_path2"), 2);
    PinConstraint pins = PinConstraint::from_marks(p.graph);
    EmbedResult r = find_embedding(p.graph, host, pins);
    REQUIRE(r.status == EmbedStatus::Found);
    const auto& w = *r.witness;
    CHECK(host.node(w.node_map[3]).role == NodeRole::Edge);
    bool via_dup2 = false;
    for (const auto& path : w.paths)
        for (int n : path) via_dup2 = via_dup2 || (host.node(n).role == NodeRole::Vertex && host.node(n).dup == 2);
    CHECK(via_dup2);
    for (int t = 0; t < 3; ++t) CHECK(host.node(w.node_map[static_cast<std::size_t>(t)]).dup == 1);
}

TEST_CASE("verify_embedding rejects mutated witnesses") {
    DivisionPattern p = assemble_pattern(corpus("H_e3"), {0});
    LabeledGraph host = m_factor_graph(corpus("G_path2"), 2);
    PinConstraint pins = PinConstraint::from_marks(p.graph);
    EmbedResult r = find_embedding(p.graph, host, pins);
    REQUIRE(r.status == EmbedStatus::Found);

    EmbeddingWitness pinned_dup2 = *r.witness;
    for (std::size_t t = 0; t < 3; ++t) {
        int img = pinned_dup2.node_map[t];
        if (host.node(img).role != NodeRole::Vertex) continue;
        int alt = img + 1;  // duplicate 2 of the same vertex (layout: dups are consecutive)
        bool free = true;
        for (int m : pinned_dup2.node_map) free = free && m != alt;
        for (const auto& path : pinned_dup2.paths)
            for (int n : path) free = free && n != alt;
        if (!free || host.node(alt).dup != 2) continue;
        pinned_dup2.node_map[t] = alt;
        for (auto& path : pinned_dup2.paths) {
            if (path.front() == img) path.front() = alt;
            if (path.back() == img) path.back() = alt;
        }
        break;
    }
    CHECK_FALSE(verify_embedding(p.graph, host, pins, pinned_dup2));

    LabeledGraph tri = plain(3, {{0, 1}, {1, 2}, {2, 0}});
    LabeledGraph host5 = plain(5, {{0, 3}, {3, 1}, {1, 2}, {2, 0}, {0, 4}, {4, 1}, {2, 3}});
    EmbeddingWitness shared{{0, 1, 2}, {{0, 3, 1}, {1, 2}, {2, 0}}};
    CHECK(verify_embedding(tri, host5, PinConstraint::none(3), shared));
    EmbeddingWitness clash{{0, 1, 2}, {{0, 3, 1}, {1, 2}, {2, 3, 0}}};
    std::string why;
    CHECK_FALSE(verify_embedding(tri, host5, PinConstraint::none(3), clash, &why));
    CHECK_FALSE(why.empty());
}

TEST_CASE("parallel pattern links need distinct paths") {
    LabeledGraph two = plain(2, {{0, 1}, {0, 1}});
    CHECK_FALSE(found(two, plain(2, {{0, 1}}), PinConstraint::none(2)));
    CHECK(found(two, plain(2, {{0, 1}, {0, 1}}), PinConstraint::none(2)));
    CHECK(found(two, plain(3, {{0, 1}, {1, 2}, {2, 0}}), PinConstraint::none(2)));
}

TEST_CASE("budget exhaustion is reported") {
    DivisionPattern p = assemble_pattern(corpus("H_e4"), {0});
    LabeledGraph host = m_factor_graph(corpus("CAT4"), 3);
    SearchLimits lim;
    lim.max_expansions = 1;
    EmbedResult r = find_embedding(p.graph, host, PinConstraint::from_marks(p.graph), lim);
    CHECK(r.status != EmbedStatus::Found);
    std::atomic<bool> stop{true};
    SearchLimits cancelled;
    cancelled.cancel = &stop;
    CHECK(find_embedding(p.graph, host, PinConstraint::from_marks(p.graph), cancelled).status ==
          EmbedStatus::BudgetExhausted);
}

TEST_CASE("property: agreement with brute force on small graphs") {
    std::mt19937_64 rng(41);
    int yes = 0, total = 0;
    for (int i = 0; i < 1500; ++i) {
        LabeledGraph p = random_graph(rng, 5, 5);
        LabeledGraph h = random_graph(rng, 8, 10);
        auto pins = PinConstraint::none(p.node_count());
        bool a = found(p, h, pins);
        bool b = himm::testing::brute_force_embeds(p, h, pins);
        CHECK(a == b);
        yes += a;
        ++total;
    }
    CHECK(yes > 100);
    CHECK(yes < total);
}

TEST_CASE("property: agreement with brute force on pinned division patterns") {
    std::mt19937_64 rng(42);
    int yes = 0;
    for (int i = 0; i < 300; ++i) {
        Hypergraph h = himm::testing::random_hypergraph(rng, 4, 2, 4, "a", "e");
        Hypergraph g = himm::testing::random_hypergraph(rng, 3, 3, 3, "x", "g");
        LabeledGraph host = m_factor_graph(g, 1 + rng() % 2);
        if (host.node_count() > 8) continue;
        for (const auto& m : division_set(h).members) {
            if (m.graph.node_count() > 5) continue;
            auto pins = PinConstraint::from_marks(m.graph);
            bool a = found(m.graph, host, pins);
            CHECK(a == himm::testing::brute_force_embeds(m.graph, host, pins));
            yes += a;
        }
    }
    CHECK(yes > 20);
}

TEST_CASE("property: adding a host link keeps yes") {
    std::mt19937_64 rng(43);
    for (int i = 0; i < 300; ++i) {
        LabeledGraph p = random_graph(rng, 5, 5);
        LabeledGraph h = random_graph(rng, 8, 9);
        auto pins = PinConstraint::none(p.node_count());
        if (!found(p, h, pins) || h.node_count() < 2) continue;
        LabeledGraph h2 = h;
        int a = static_cast<int>(rng() % h.node_count());
        int b = static_cast<int>(rng() % h.node_count());
        if (a == b) continue;
        h2.add_link(a, b);
        CHECK(found(p, h2, pins));
    }
}

TEST_CASE("property: a subdivided pattern embedding implies the original embeds") {
    std::mt19937_64 rng(44);
    int checked = 0;
    for (int i = 0; i < 400; ++i) {
        LabeledGraph p = random_graph(rng, 4, 5);
        if (p.link_count() == 0) continue;
        LabeledGraph h = random_graph(rng, 8, 11);
        LabeledGraph sub = subdivide(p, rng() % p.link_count());
        if (!found(sub, h, PinConstraint::none(sub.node_count()))) continue;
        CHECK(found(p, h, PinConstraint::none(p.node_count())));
        ++checked;
    }
    CHECK(checked > 20);
}

TEST_CASE("patterns with thousands of links") {
    std::vector<std::pair<int, int>> links;
    for (int a = 0; a < 90; ++a)
        for (int b = a + 1; b < 90; ++b) links.emplace_back(a, b);
    LabeledGraph k90 = plain(90, links);
    REQUIRE(k90.link_count() > 4000);
    CHECK(found(k90, k90, PinConstraint::none(90)));
    LabeledGraph less = plain(90, std::vector<std::pair<int, int>>(links.begin() + 1, links.end()));
    CHECK_FALSE(found(k90, less, PinConstraint::none(90)));
}
