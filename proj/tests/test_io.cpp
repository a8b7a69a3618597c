#include "doctest.h"

#include <filesystem>

#include "himm/engine.hpp"
#include "himm/io.hpp"
#include "himm/transforms.hpp"
#include "instances.hpp"

using namespace himm;
using himm::testing::corpus;

#ifndef HIMM_TEST_DATA
#define HIMM_TEST_DATA "tests/data"
#endif

namespace {

ErrorCode code_of(const std::string& text) {
    try {
        parse_hypergraph(text);
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("parsed: " << text);
    return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("corpus files round-trip byte for byte") {
    int files = 0;
    for (const auto& entry : std::filesystem::directory_iterator(HIMM_TEST_DATA)) {
        if (entry.path().extension() != ".json") continue;
        std::string text = read_file(entry.path());
        CHECK_MESSAGE(hypergraph_json(parse_hypergraph(text)) == text, entry.path().string());
        ++files;
    }
    CHECK(files >= static_cast<int>(himm::testing::corpus_names().size()));
    for (const auto& n : himm::testing::corpus_names())
        CHECK(read_file(std::filesystem::path(HIMM_TEST_DATA) / (n + ".json")) == hypergraph_json(corpus(n)));
}

TEST_CASE("hypergraph format") {
    Hypergraph g = parse_hypergraph(R"({"vertices":["a","b","c"],"edges":[{"id":"e1","vertices":["a","b"]}]})");
    CHECK(g.vertex_count() == 3);
    CHECK(hypergraph_json(g) == "{\"vertices\":[\"a\",\"b\",\"c\"],\"edges\":[{\"id\":\"e1\",\"vertices\":[\"a\",\"b\"]}]}\n");
    CHECK(code_of(R"({"vertices":["a","a"],"edges":[]})") == ErrorCode::DuplicateId);
    CHECK(code_of(R"({"vertices":["a","b"],"edges":[{"id":"e","vertices":["a"]},{"id":"e","vertices":["b"]}]})") ==
          ErrorCode::DuplicateId);
    CHECK(code_of(R"({"vertices":["a"],"edges":[{"id":"e","vertices":["q"]}]})") == ErrorCode::UnknownVertex);
    CHECK(code_of(R"({"vertices":["a"]})") == ErrorCode::ParseError);
    CHECK(code_of(R"({"vertices":["a"],"edges":[)") == ErrorCode::ParseError);
    CHECK(code_of(R"({"vertices":[1],"edges":[]})") == ErrorCode::ParseError);
    CHECK(parse_hypergraph(R"({"vertices":["ä","β"],"edges":[{"id":"ε","vertices":["ä","β"]}]})").edge(0).id == "ε");
}

TEST_CASE("witness format round-trips") {
    Decision d = decide_immersion(corpus("H_e3"), corpus("G_path2"));
    REQUIRE(d.witness);
    std::string text = witness_json(*d.witness);
    CHECK(text ==
          "{\"vertexMap\":{\"a\":\"x\",\"b\":\"y\",\"c\":\"z\"},\"edgeSubgraphs\":{\"e\":{\"edges\":[\"p1\",\"p2\"],"
          "\"extraVertices\":[]}},\"replay\":[{\"op\":\"coalesce\",\"args\":[\"p1\",\"p2\"]}]}\n");
    ImmersionWitness back = parse_witness(text);
    CHECK(witness_json(back) == text);
    CHECK(verify_immersion(corpus("H_e3"), corpus("G_path2"), back).ok);
    CHECK_THROWS_AS(parse_witness(R"({"vertexMap":{},"edgeSubgraphs":{},"replay":[{"op":"explode","args":[]}]})"), Error);
}

TEST_CASE("dual witness and decision formats") {
    Decision d = decide_dual_immersion(corpus("H_e2"), corpus("G_e2"));
    REQUIRE(d.dual_witness);
    std::string text = dual_witness_json(*d.dual_witness);
    CHECK(dual_witness_json(parse_dual_witness(text)) == text);

    std::string dj = decision_json(decide_immersion(corpus("H_tri"), corpus("G_path2")));
    CHECK(dj.rfind("{\"answer\":\"no\",\"method\":\"pipeline\"", 0) == 0);
    CHECK(dj.find("\"note\"") != std::string::npos);
    CHECK(decision_json(decide_immersion(corpus("H_e3"), corpus("G_path2"))) ==
          decision_json(decide_immersion(corpus("H_e3"), corpus("G_path2"))));
}

TEST_CASE("labeled graph and embedding witness formats") {
    LabeledGraph m = m_factor_graph(corpus("G_e2"), 2);
    std::string text = labeled_graph_json(m);
    CHECK(text.rfind("{\"nodes\":[{\"id\":\"v:x#1\",\"role\":\"vertex\",\"origin\":\"x\",\"dup\":1}", 0) == 0);
    CHECK(text.find("\"links\":[[\"v:x#1\",\"e:g\"]") != std::string::npos);

    DivisionPattern p = assemble_pattern(corpus("H_e3"), {0});
    LabeledGraph host = m_factor_graph(corpus("G_path2"), 2);
    EmbedResult r = find_embedding(p.graph, host, PinConstraint::from_marks(p.graph));
    REQUIRE(r.witness);
    std::string ew = embedding_witness_json(p.graph, host, *r.witness);
    CHECK(ew.rfind("{\"nodeMap\":{", 0) == 0);
    CHECK(ew.find("\"link\":[") != std::string::npos);
}
