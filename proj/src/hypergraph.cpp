#include "himm/hypergraph.hpp"

#include <algorithm>
#include <numeric>

namespace himm {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::UnknownEdge: return "UnknownEdge";
        case ErrorCode::UnknownVertex: return "UnknownVertex";
        case ErrorCode::UnknownNode: return "UnknownNode";
        case ErrorCode::NoSharedVertex: return "NoSharedVertex";
        case ErrorCode::VertexNotInEdge: return "VertexNotInEdge";
        case ErrorCode::WouldEmptyEdge: return "WouldEmptyEdge";
        case ErrorCode::NotSizeTwo: return "NotSizeTwo";
        case ErrorCode::NoCommonEndpoint: return "NoCommonEndpoint";
        case ErrorCode::WouldCreateLoop: return "WouldCreateLoop";
        case ErrorCode::NotConnectedByEdge: return "NotConnectedByEdge";
        case ErrorCode::VertexNotIsolated: return "VertexNotIsolated";
        case ErrorCode::DuplicateId: return "DuplicateId";
        case ErrorCode::InvalidHypergraph: return "InvalidHypergraph";
        case ErrorCode::LoopCreated: return "LoopCreated";
        case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
        case ErrorCode::CapExceeded: return "CapExceeded";
        case ErrorCode::ProjectionFailure: return "ProjectionFailure";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::ParseError: return "ParseError";
    }
    return "Error";
}

Hypergraph::Hypergraph(std::vector<VertexId> vertices,
                       std::vector<std::pair<EdgeId, std::vector<VertexId>>> edges) {
    for (auto& v : vertices) add_vertex(v);
    for (auto& [id, vs] : edges) add_edge(id, vs);
}

int Hypergraph::add_vertex(const VertexId& v) {
    if (vertex_index_.contains(v)) throw Error(ErrorCode::DuplicateId, "vertex '" + v + "'");
    int idx = static_cast<int>(vertices_.size());
    vertices_.push_back(v);
    vertex_index_.emplace(v, idx);
    return idx;
}

int Hypergraph::add_edge(const EdgeId& id, const std::vector<VertexId>& vertices) {
    std::vector<int> idx;
    idx.reserve(vertices.size());
    for (const auto& v : vertices) idx.push_back(vertex_index(v));
    return add_edge_indices(id, std::move(idx));
}

int Hypergraph::add_edge_indices(const EdgeId& id, std::vector<int> vertices) {
    if (edge_index_.contains(id)) throw Error(ErrorCode::DuplicateId, "edge '" + id + "'");
    if (vertices.empty()) throw Error(ErrorCode::InvalidHypergraph, "edge '" + id + "' is empty");
    for (int v : vertices)
        if (v < 0 || static_cast<std::size_t>(v) >= vertices_.size())
            throw Error(ErrorCode::UnknownVertex, "index " + std::to_string(v) + " in edge '" + id + "'");
    auto sorted = vertices;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw Error(ErrorCode::InvalidHypergraph, "edge '" + id + "' repeats a vertex (loop)");
    int idx = static_cast<int>(edges_.size());
    edges_.push_back({id, std::move(vertices)});
    edge_index_.emplace(id, idx);
    return idx;
}

std::optional<int> Hypergraph::find_vertex(const VertexId& v) const {
    auto it = vertex_index_.find(v);
    if (it == vertex_index_.end()) return std::nullopt;
    return it->second;
}

std::optional<int> Hypergraph::find_edge(const EdgeId& e) const {
    auto it = edge_index_.find(e);
    if (it == edge_index_.end()) return std::nullopt;
    return it->second;
}

int Hypergraph::vertex_index(const VertexId& v) const {
    auto idx = find_vertex(v);
    if (!idx) throw Error(ErrorCode::UnknownVertex, "'" + v + "'");
    return *idx;
}

int Hypergraph::edge_index(const EdgeId& e) const {
    auto idx = find_edge(e);
    if (!idx) throw Error(ErrorCode::UnknownEdge, "'" + e + "'");
    return *idx;
}

std::vector<VertexId> Hypergraph::edge_vertex_ids(int e) const {
    std::vector<VertexId> out;
    for (int v : edge(e).vertices) out.push_back(vertices_[static_cast<std::size_t>(v)]);
    return out;
}

bool Hypergraph::edge_contains(int e, int v) const {
    const auto& vs = edge(e).vertices;
    return std::find(vs.begin(), vs.end(), v) != vs.end();
}

std::size_t Hypergraph::degree(int v) const {
    std::size_t d = 0;
    for (const auto& e : edges_) d += static_cast<std::size_t>(std::count(e.vertices.begin(), e.vertices.end(), v));
    return d;
}

std::size_t Hypergraph::incidence_count() const {
    std::size_t n = 0;
    for (const auto& e : edges_) n += e.vertices.size();
    return n;
}

std::vector<std::vector<int>> Hypergraph::incidence() const {
    std::vector<std::vector<int>> inc(vertices_.size());
    for (std::size_t e = 0; e < edges_.size(); ++e)
        for (int v : edges_[e].vertices) inc[static_cast<std::size_t>(v)].push_back(static_cast<int>(e));
    return inc;
}

EdgeId Hypergraph::fresh_edge_id(const std::string& base) const {
    EdgeId id = base;
    while (edge_index_.contains(id)) id += '\'';
    return id;
}

VertexId Hypergraph::fresh_vertex_id(const std::string& base) const {
    VertexId id = base;
    while (vertex_index_.contains(id)) id += '\'';
    return id;
}

bool operator==(const Hypergraph& a, const Hypergraph& b) {
    if (a.vertices_ != b.vertices_ || a.edges_.size() != b.edges_.size()) return false;
    for (std::size_t i = 0; i < a.edges_.size(); ++i)
        if (a.edges_[i].id != b.edges_[i].id || a.edges_[i].vertices != b.edges_[i].vertices) return false;
    return true;
}

namespace {

// Rebuilds g without the listed edges, then appends `extra` edges.
Hypergraph rebuild(const Hypergraph& g, const std::vector<int>& removed,
                   const std::vector<std::pair<EdgeId, std::vector<int>>>& extra) {
    Hypergraph out;
    for (const auto& v : g.vertices()) out.add_vertex(v);
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
        if (std::find(removed.begin(), removed.end(), static_cast<int>(e)) != removed.end()) continue;
        out.add_edge_indices(g.edge(static_cast<int>(e)).id, g.edge(static_cast<int>(e)).vertices);
    }
    for (const auto& [id, vs] : extra) out.add_edge_indices(id, vs);
    return out;
}

}  // namespace

Hypergraph coalesce_edges(const Hypergraph& g, const EdgeId& e1, const EdgeId& e2) {
    int a = g.edge_index(e1);
    int b = g.edge_index(e2);
    if (a == b) throw Error(ErrorCode::InvalidArgument, "cannot coalesce edge '" + e1 + "' with itself");
    std::vector<int> merged = g.edge(a).vertices;
    bool shared = false;
    for (int v : g.edge(b).vertices) {
        if (g.edge_contains(a, v))
            shared = true;
        else
            merged.push_back(v);
    }
    if (!shared) throw Error(ErrorCode::NoSharedVertex, "'" + e1 + "' and '" + e2 + "'");
    Hypergraph tmp = rebuild(g, {a, b}, {});
    EdgeId id = tmp.fresh_edge_id("cl:" + e1 + "+" + e2);
    return rebuild(g, {a, b}, {{id, merged}});
}

Hypergraph dewet(const Hypergraph& g, const EdgeId& e, const VertexId& v) {
    int ei = g.edge_index(e);
    int vi = g.vertex_index(v);
    if (!g.edge_contains(ei, vi)) throw Error(ErrorCode::VertexNotInEdge, "'" + v + "' not in '" + e + "'");
    if (g.edge(ei).vertices.size() == 1) throw Error(ErrorCode::WouldEmptyEdge, "'" + e + "'");
    std::vector<int> rest;
    for (int x : g.edge(ei).vertices)
        if (x != vi) rest.push_back(x);
    Hypergraph tmp = rebuild(g, {ei}, {});
    EdgeId id = tmp.fresh_edge_id("dw:" + e + "-" + v);
    return rebuild(g, {ei}, {{id, rest}});
}

Hypergraph lift(const Hypergraph& g, const EdgeId& f1, const EdgeId& f2) {
    int a = g.edge_index(f1);
    int b = g.edge_index(f2);
    const auto& ea = g.edge(a).vertices;
    const auto& eb = g.edge(b).vertices;
    if (a == b || ea.size() != 2 || eb.size() != 2)
        throw Error(ErrorCode::NotSizeTwo, "lift needs two distinct size-2 edges");
    std::optional<int> shared;
    for (int x : ea)
        if (g.edge_contains(b, x)) shared = x;
    if (!shared) throw Error(ErrorCode::NoCommonEndpoint, "'" + f1 + "' and '" + f2 + "'");
    int v = ea[0] == *shared ? ea[1] : ea[0];
    int w = eb[0] == *shared ? eb[1] : eb[0];
    if (v == w) throw Error(ErrorCode::WouldCreateLoop, "'" + f1 + "' and '" + f2 + "' are parallel");
    Hypergraph tmp = rebuild(g, {a, b}, {});
    EdgeId id = tmp.fresh_edge_id("lf:" + f1 + "+" + f2);
    return rebuild(g, {a, b}, {{id, {v, w}}});
}

Hypergraph vertex_coalesce(const Hypergraph& g, const VertexId& u, const VertexId& v,
                           std::optional<VertexId> merged_name) {
    int ui = g.vertex_index(u);
    int vi = g.vertex_index(v);
    if (ui == vi) throw Error(ErrorCode::InvalidArgument, "cannot coalesce '" + u + "' with itself");
    bool adjacent = false;
    for (std::size_t e = 0; e < g.edge_count(); ++e)
        if (g.edge_contains(static_cast<int>(e), ui) && g.edge_contains(static_cast<int>(e), vi)) adjacent = true;
    if (!adjacent) throw Error(ErrorCode::NotConnectedByEdge, "'" + u + "' and '" + v + "'");

    VertexId name = merged_name.value_or("vc:" + u + "+" + v);
    if (name != u && name != v && g.find_vertex(name))
        throw Error(ErrorCode::DuplicateId, "vertex '" + name + "'");

    Hypergraph out;
    std::vector<int> remap(g.vertex_count(), -1);
    for (std::size_t i = 0; i < g.vertex_count(); ++i) {
        if (static_cast<int>(i) == vi) continue;
        remap[i] = out.add_vertex(static_cast<int>(i) == ui ? name : g.vertex(static_cast<int>(i)));
    }
    remap[static_cast<std::size_t>(vi)] = remap[static_cast<std::size_t>(ui)];
    for (const auto& e : g.edges()) {
        std::vector<int> vs;
        for (int x : e.vertices) {
            int y = remap[static_cast<std::size_t>(x)];
            if (std::find(vs.begin(), vs.end(), y) == vs.end()) vs.push_back(y);
        }
        out.add_edge_indices(e.id, vs);
    }
    return out;
}

Hypergraph delete_edge(const Hypergraph& g, const EdgeId& e) {
    return rebuild(g, {g.edge_index(e)}, {});
}

Hypergraph delete_vertex(const Hypergraph& g, const VertexId& v) {
    int vi = g.vertex_index(v);
    if (g.degree(vi) != 0) throw Error(ErrorCode::VertexNotIsolated, "'" + v + "'");
    Hypergraph out;
    for (std::size_t i = 0; i < g.vertex_count(); ++i)
        if (static_cast<int>(i) != vi) out.add_vertex(g.vertex(static_cast<int>(i)));
    for (const auto& e : g.edges()) out.add_edge(e.id, g.edge_vertex_ids(g.edge_index(e.id)));
    return out;
}

TransposeResult transpose(const Hypergraph& g) {
    TransposeResult r;
    for (const auto& e : g.edges()) r.graph.add_vertex(e.id);
    auto inc = g.incidence();
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
        if (inc[v].empty()) {
            r.dropped.push_back(g.vertex(static_cast<int>(v)));
            continue;
        }
        r.graph.add_edge_indices(g.vertex(static_cast<int>(v)), inc[v]);
    }
    return r;
}

Hypergraph untranspose(const TransposeResult& t) {
    Hypergraph back = transpose(t.graph).graph;
    for (const auto& v : t.dropped) back.add_vertex(v);
    return back;
}

namespace {

struct DisjointSets {
    std::vector<int> parent;
    explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    }
    void unite(int a, int b) { parent[static_cast<std::size_t>(find(a))] = find(b); }
};

}  // namespace

bool is_connected_cover_idx(const Hypergraph& g, std::span<const int> edges, std::span<const int> terminals) {
    for (int e : edges)
        if (e < 0 || static_cast<std::size_t>(e) >= g.edge_count())
            throw Error(ErrorCode::UnknownEdge, "index " + std::to_string(e));
    for (int v : terminals)
        if (v < 0 || static_cast<std::size_t>(v) >= g.vertex_count())
            throw Error(ErrorCode::UnknownVertex, "index " + std::to_string(v));
    if (terminals.size() <= 1) return true;
    DisjointSets ds(g.vertex_count());
    for (int e : edges) {
        const auto& vs = g.edge(e).vertices;
        for (std::size_t i = 1; i < vs.size(); ++i) ds.unite(vs[0], vs[i]);
    }
    int root = ds.find(terminals[0]);
    return std::all_of(terminals.begin(), terminals.end(), [&](int v) { return ds.find(v) == root; });
}

bool is_connected_cover(const Hypergraph& g, std::span<const EdgeId> edges, std::span<const VertexId> terminals) {
    std::vector<int> e_idx, t_idx;
    for (const auto& e : edges) e_idx.push_back(g.edge_index(e));
    for (const auto& v : terminals) t_idx.push_back(g.vertex_index(v));
    return is_connected_cover_idx(g, e_idx, t_idx);
}

std::string_view op_name(OpKind kind) {
    switch (kind) {
        case OpKind::Coalesce: return "coalesce";
        case OpKind::Dewet: return "dewet";
        case OpKind::Lift: return "lift";
        case OpKind::VertexCoalesce: return "vertexCoalesce";
        case OpKind::DeleteEdge: return "deleteEdge";
        case OpKind::DeleteVertex: return "deleteVertex";
    }
    return "?";
}

OpKind op_from_name(std::string_view name) {
    for (auto k : {OpKind::Coalesce, OpKind::Dewet, OpKind::Lift, OpKind::VertexCoalesce, OpKind::DeleteEdge,
                   OpKind::DeleteVertex})
        if (op_name(k) == name) return k;
    throw Error(ErrorCode::ParseError, "unknown operation '" + std::string(name) + "'");
}

Hypergraph apply_step(const Hypergraph& g, const OperationStep& step) {
    auto need = [&](std::size_t n) {
        if (step.args.size() != n)
            throw Error(ErrorCode::InvalidArgument, std::string(op_name(step.kind)) + " takes " + std::to_string(n) +
                                                        " arguments");
    };
    switch (step.kind) {
        case OpKind::Coalesce: need(2); return coalesce_edges(g, step.args[0], step.args[1]);
        case OpKind::Dewet: need(2); return dewet(g, step.args[0], step.args[1]);
        case OpKind::Lift: need(2); return lift(g, step.args[0], step.args[1]);
        case OpKind::VertexCoalesce: need(2); return vertex_coalesce(g, step.args[0], step.args[1]);
        case OpKind::DeleteEdge: need(1); return delete_edge(g, step.args[0]);
        case OpKind::DeleteVertex: need(1); return delete_vertex(g, step.args[0]);
    }
    throw Error(ErrorCode::InvalidArgument, "unknown operation");
}

Hypergraph apply_sequence(const Hypergraph& g, std::span<const OperationStep> steps) {
    Hypergraph cur = g;
    for (std::size_t i = 0; i < steps.size(); ++i) {
        try {
            cur = apply_step(cur, steps[i]);
        } catch (const Error& err) {
            throw Error(err.code(), "step " + std::to_string(i) + " (" + std::string(op_name(steps[i].kind)) +
                                        "): " + err.what());
        }
    }
    return cur;
}

Hypergraph sub_hypergraph(const Hypergraph& g, std::span<const int> edges, std::span<const int> extra_vertices) {
    std::vector<char> keep_v(g.vertex_count(), 0), keep_e(g.edge_count(), 0);
    for (int e : edges) {
        keep_e.at(static_cast<std::size_t>(e)) = 1;
        for (int v : g.edge(e).vertices) keep_v[static_cast<std::size_t>(v)] = 1;
    }
    for (int v : extra_vertices) keep_v.at(static_cast<std::size_t>(v)) = 1;
    Hypergraph out;
    std::vector<int> remap(g.vertex_count(), -1);
    for (std::size_t v = 0; v < g.vertex_count(); ++v)
        if (keep_v[v]) remap[v] = out.add_vertex(g.vertex(static_cast<int>(v)));
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
        if (!keep_e[e]) continue;
        std::vector<int> vs;
        for (int v : g.edge(static_cast<int>(e)).vertices) vs.push_back(remap[static_cast<std::size_t>(v)]);
        out.add_edge_indices(g.edge(static_cast<int>(e)).id, vs);
    }
    return out;
}

}  // namespace himm
