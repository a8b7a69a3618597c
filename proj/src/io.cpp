#include "himm/io.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"

namespace himm {

using json = nlohmann::ordered_json;

namespace {

json parse_text(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw Error(ErrorCode::ParseError, e.what());
    }
}

[[noreturn]] void fail(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

const json& member(const json& j, const char* key) {
    if (!j.is_object()) fail(std::string("expected an object holding '") + key + "'");
    auto it = j.find(key);
    if (it == j.end()) fail(std::string("missing key '") + key + "'");
    return *it;
}

std::string str(const json& j, const std::string& where) {
    if (!j.is_string()) fail(where + ": expected a string");
    return j.get<std::string>();
}

std::vector<std::string> strings(const json& j, const std::string& where) {
    if (!j.is_array()) fail(where + ": expected an array");
    std::vector<std::string> out;
    for (const auto& x : j) out.push_back(str(x, where));
    return out;
}

std::string dump(const json& j) { return j.dump() + "\n"; }

json witness_to_json(const ImmersionWitness& w) {
    json j = json::object();
    j["vertexMap"] = json::object();
    for (const auto& [v, x] : w.vertex_map) j["vertexMap"][v] = x;
    j["edgeSubgraphs"] = json::object();
    for (const auto& [e, s] : w.edge_subgraphs) j["edgeSubgraphs"][e] = {{"edges", s.edges}, {"extraVertices", s.extra_vertices}};
    if (w.replay) {
        j["replay"] = json::array();
        for (const auto& st : *w.replay) j["replay"].push_back({{"op", std::string(op_name(st.kind))}, {"args", st.args}});
    }
    return j;
}

json dual_to_json(const DualWitness& w) {
    json j = json::object();
    j["edgeMap"] = json::object();
    for (const auto& [e, f] : w.edge_map) j["edgeMap"][e] = f;
    j["vertexSubgraphs"] = json::object();
    for (const auto& [v, s] : w.vertex_subgraphs) j["vertexSubgraphs"][v] = s;
    return j;
}

}  // namespace

Hypergraph parse_hypergraph(const std::string& text) {
    json j = parse_text(text);
    Hypergraph g;
    for (const auto& v : strings(member(j, "vertices"), "vertices")) g.add_vertex(v);
    const json& edges = member(j, "edges");
    if (!edges.is_array()) fail("edges: expected an array");
    for (const auto& e : edges) g.add_edge(str(member(e, "id"), "edge id"), strings(member(e, "vertices"), "edge vertices"));
    return g;
}

std::string hypergraph_json(const Hypergraph& g) {
    json j = json::object();
    j["vertices"] = g.vertices();
    j["edges"] = json::array();
    for (int i = 0; i < static_cast<int>(g.edge_count()); ++i)
        j["edges"].push_back({{"id", g.edge(i).id}, {"vertices", g.edge_vertex_ids(i)}});
    return dump(j);
}

ImmersionWitness parse_witness(const std::string& text) {
    json j = parse_text(text);
    ImmersionWitness w;
    const json& vm = member(j, "vertexMap");
    if (!vm.is_object()) fail("vertexMap: expected an object");
    for (const auto& [k, v] : vm.items()) w.vertex_map.emplace_back(k, str(v, "vertexMap"));
    const json& es = member(j, "edgeSubgraphs");
    if (!es.is_object()) fail("edgeSubgraphs: expected an object");
    for (const auto& [k, v] : es.items()) {
        EdgeSubgraph s;
        s.edges = strings(member(v, "edges"), "edges of " + k);
        if (v.contains("extraVertices")) s.extra_vertices = strings(v["extraVertices"], "extraVertices of " + k);
        w.edge_subgraphs.emplace_back(k, std::move(s));
    }
    if (j.contains("replay")) {
        const json& r = j["replay"];
        if (!r.is_array()) fail("replay: expected an array");
        std::vector<OperationStep> steps;
        for (const auto& st : r) steps.push_back({op_from_name(str(member(st, "op"), "op")), strings(member(st, "args"), "args")});
        w.replay = std::move(steps);
    }
    return w;
}

std::string witness_json(const ImmersionWitness& w) { return dump(witness_to_json(w)); }

DualWitness parse_dual_witness(const std::string& text) {
    json j = parse_text(text);
    DualWitness w;
    const json& em = member(j, "edgeMap");
    if (!em.is_object()) fail("edgeMap: expected an object");
    for (const auto& [k, v] : em.items()) w.edge_map.emplace_back(k, str(v, "edgeMap"));
    const json& vs = member(j, "vertexSubgraphs");
    if (!vs.is_object()) fail("vertexSubgraphs: expected an object");
    for (const auto& [k, v] : vs.items()) w.vertex_subgraphs.emplace_back(k, strings(v, "vertexSubgraphs of " + k));
    return w;
}

std::string dual_witness_json(const DualWitness& w) { return dump(dual_to_json(w)); }

std::string decision_json(const Decision& d) {
    json j = json::object();
    j["answer"] = std::string(to_string(d.answer));
    j["method"] = d.stats.method;
    if (d.stats.method == "pipeline") {
        j["params"] = {{"M", d.stats.params.M}, {"L", d.stats.params.L}, {"mode", std::string(mode_name(d.stats.params.mode))}};
        j["divisionClasses"] = d.stats.division_classes;
        j["classesTested"] = d.stats.classes_tested;
        j["succeedingClass"] = d.stats.succeeding_class;
    }
    j["expansions"] = d.stats.expansions;
    if (!d.stats.note.empty()) j["note"] = d.stats.note;
    if (d.witness) j["witness"] = witness_to_json(*d.witness);
    if (d.dual_witness) j["dualWitness"] = dual_to_json(*d.dual_witness);
    return dump(j);
}

std::string labeled_graph_json(const LabeledGraph& g) {
    json j = json::object();
    j["nodes"] = json::array();
    for (const auto& n : g.nodes()) {
        json x = {{"id", n.id}, {"role", std::string(role_name(n.role))}, {"origin", n.origin}};
        if (n.role == NodeRole::Vertex) x["dup"] = n.dup;
        if (n.pinned) x["pinned"] = true;
        if (n.anchor >= 0) x["anchor"] = g.node(n.anchor).id;
        j["nodes"].push_back(std::move(x));
    }
    j["links"] = json::array();
    for (auto [a, b] : g.links()) j["links"].push_back({g.node(a).id, g.node(b).id});
    return dump(j);
}

std::string embedding_witness_json(const LabeledGraph& pattern, const LabeledGraph& host, const EmbeddingWitness& w) {
    json j = json::object();
    j["nodeMap"] = json::object();
    for (std::size_t p = 0; p < w.node_map.size(); ++p)
        j["nodeMap"][pattern.node(static_cast<int>(p)).id] = host.node(w.node_map[p]).id;
    j["paths"] = json::array();
    std::map<std::pair<int, int>, int> seen;
    for (std::size_t l = 0; l < w.paths.size() && l < pattern.link_count(); ++l) {
        auto [a, b] = pattern.links()[l];
        int k = seen[std::minmax(a, b)]++;
        json path = json::array();
        for (int n : w.paths[l]) path.push_back(host.node(n).id);
        j["paths"].push_back({{"link", {pattern.node(a).id, pattern.node(b).id, k}}, {"path", std::move(path)}});
    }
    return dump(j);
}

std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw Error(ErrorCode::ParseError, "cannot read " + p.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::filesystem::path& p, const std::string& content) {
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream out(p, std::ios::binary);
    if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write " + p.string());
    out << content;
}

}  // namespace himm
