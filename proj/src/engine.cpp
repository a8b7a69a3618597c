#include "himm/engine.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <map>
#include <mutex>
#include <set>
#include <thread>

namespace himm {

const VertexId* ImmersionWitness::image(const VertexId& v) const {
    for (const auto& [a, b] : vertex_map)
        if (a == v) return &b;
    return nullptr;
}

const EdgeSubgraph* ImmersionWitness::subgraph(const EdgeId& e) const {
    for (const auto& [id, s] : edge_subgraphs)
        if (id == e) return &s;
    return nullptr;
}

std::string_view to_string(Answer a) {
    switch (a) {
        case Answer::Yes: return "yes";
        case Answer::No: return "no";
        case Answer::Unknown: return "unknown";
    }
    return "?";
}

Params resolve_params(const Hypergraph& h, const Hypergraph& g, const EngineOptions& opts) {
    Params p = default_params(h, g);
    if (opts.M) p.M = *opts.M;
    if (opts.L) p.L = *opts.L;
    p.mode = opts.mode;
    if (p.M == 0) throw Error(ErrorCode::InvalidArgument, "M must be positive");
    if (p.mode == DensifyMode::Literal && p.L < 2) throw Error(ErrorCode::InvalidArgument, "L must be at least 2");
    return p;
}

namespace {

// Returns a reason when a necessary condition already rules out an immersion.
std::optional<std::string> preflight(const Hypergraph& h, const Hypergraph& g) {
    if (h.vertex_count() > g.vertex_count())
        return "H has more vertices than G (" + std::to_string(h.vertex_count()) + " > " +
               std::to_string(g.vertex_count()) + ")";
    std::size_t needy = 0;
    for (const auto& e : h.edges()) needy += e.vertices.size() >= 2;
    if (needy > g.edge_count())
        return "H has " + std::to_string(needy) + " hyperedges of size >= 2 but G has only " +
               std::to_string(g.edge_count()) + " hyperedges";
    return std::nullopt;
}

std::vector<int> image_indices(const Hypergraph& h, const Hypergraph& g, const ImmersionWitness& w) {
    std::vector<int> out;
    for (const auto& v : h.vertices()) out.push_back(g.vertex_index(*w.image(v)));
    return out;
}

EdgeSubgraph make_subgraph(const Hypergraph& g, std::vector<int> edges, const std::vector<int>& terminals) {
    std::sort(edges.begin(), edges.end());
    std::vector<char> covered(g.vertex_count(), 0);
    for (int e : edges)
        for (int v : g.edge(e).vertices) covered[static_cast<std::size_t>(v)] = 1;
    for (int t : terminals) covered[static_cast<std::size_t>(t)] = 0;
    EdgeSubgraph s;
    for (int e : edges) s.edges.push_back(g.edge(e).id);
    for (std::size_t v = 0; v < g.vertex_count(); ++v)
        if (covered[v]) s.extra_vertices.push_back(g.vertex(static_cast<int>(v)));
    return s;
}

}  // namespace

// ---------------------------------------------------------------------------
// Replay and verification

std::vector<OperationStep> build_replay(const Hypergraph& h, const Hypergraph& g, const ImmersionWitness& w) {
    std::vector<int> images = image_indices(h, g, w);
    std::vector<int> used;
    for (const auto& [id, s] : w.edge_subgraphs)
        for (const auto& e : s.edges) used.push_back(g.edge_index(e));
    std::sort(used.begin(), used.end());
    Hypergraph work = sub_hypergraph(g, used, images);

    std::vector<OperationStep> steps;
    auto apply = [&](OperationStep step) {
        work = apply_step(work, step);
        steps.push_back(std::move(step));
        return work.edges().back().id;
    };

    for (std::size_t ei = 0; ei < h.edge_count(); ++ei) {
        const auto& he = h.edge(static_cast<int>(ei));
        const EdgeSubgraph* s = w.subgraph(he.id);
        if (!s || s->edges.empty()) continue;
        std::set<VertexId> terminals;
        for (int v : he.vertices) terminals.insert(*w.image(h.vertex(v)));

        // Breadth-first over shared vertices, starting at an edge holding a terminal.
        std::vector<EdgeId> remaining = s->edges;
        auto holds_terminal = [&](const EdgeId& e) {
            for (const auto& v : work.edge_vertex_ids(work.edge_index(e)))
                if (terminals.count(v)) return true;
            return false;
        };
        auto first = std::find_if(remaining.begin(), remaining.end(), holds_terminal);
        if (first == remaining.end()) first = remaining.begin();
        EdgeId cur = *first;
        remaining.erase(first);
        while (!remaining.empty()) {
            auto cur_vs = work.edge_vertex_ids(work.edge_index(cur));
            std::set<VertexId> have(cur_vs.begin(), cur_vs.end());
            auto next = std::find_if(remaining.begin(), remaining.end(), [&](const EdgeId& e) {
                for (const auto& v : work.edge_vertex_ids(work.edge_index(e)))
                    if (have.count(v)) return true;
                return false;
            });
            if (next == remaining.end())
                throw Error(ErrorCode::ProjectionFailure, "subgraph of '" + he.id + "' is not connected");
            EdgeId f = *next;
            remaining.erase(next);
            cur = apply(OperationStep::coalesce(cur, f));
        }
        for (const auto& v : work.edge_vertex_ids(work.edge_index(cur)))
            if (!terminals.count(v)) cur = apply(OperationStep::dewet(cur, v));
    }

    std::set<VertexId> image_names;
    for (const auto& [a, b] : w.vertex_map) image_names.insert(b);
    for (const auto& v : std::vector<VertexId>(work.vertices()))
        if (!image_names.count(v) && work.degree(work.vertex_index(v)) == 0) {
            work = delete_vertex(work, v);
            steps.push_back(OperationStep::delete_vertex(v));
        }
    return steps;
}

VerificationReport verify_immersion(const Hypergraph& h, const Hypergraph& g, const ImmersionWitness& w) {
    VerificationReport r;
    auto violate = [&](std::string msg) {
        r.ok = false;
        r.violations.push_back(std::move(msg));
    };

    // (1) injective vertex map over all of V(H)
    std::map<VertexId, VertexId> vmap;
    for (const auto& [a, b] : w.vertex_map) {
        if (!h.find_vertex(a)) violate("vertex map names unknown vertex of H: " + a);
        if (!g.find_vertex(b)) violate("vertex map targets unknown vertex of G: " + b);
        if (!vmap.emplace(a, b).second) violate("vertex map lists " + a + " twice");
    }
    for (const auto& v : h.vertices())
        if (!vmap.count(v)) violate("vertex map missing: " + v);
    std::map<VertexId, VertexId> inverse;
    for (const auto& [a, b] : vmap) {
        auto [it, fresh] = inverse.emplace(b, a);
        if (!fresh) violate("vertex map not injective: " + it->second + " and " + a + " both map to " + b);
    }
    if (!r.ok) return r;

    // (2) connected covers, (3) pairwise edge-disjointness
    std::map<EdgeId, EdgeId> owner;
    std::set<EdgeId> listed;
    for (const auto& [id, s] : w.edge_subgraphs) {
        if (!h.find_edge(id)) {
            violate("subgraph given for unknown hyperedge of H: " + id);
            continue;
        }
        if (!listed.insert(id).second) violate("subgraph of " + id + " listed twice");
        for (const auto& e : s.edges) {
            if (!g.find_edge(e)) {
                violate("subgraph of " + id + " uses unknown hyperedge of G: " + e);
                continue;
            }
            auto [it, fresh] = owner.emplace(e, id);
            if (!fresh) violate("edge-disjointness violated: " + e);
        }
        for (const auto& v : s.extra_vertices)
            if (!g.find_vertex(v)) violate("subgraph of " + id + " lists unknown vertex of G: " + v);
    }
    for (const auto& e : h.edges())
        if (!listed.count(e.id)) violate("no subgraph for hyperedge " + e.id);
    if (!r.ok) return r;

    for (const auto& he : h.edges()) {
        const EdgeSubgraph& s = *w.subgraph(he.id);
        std::vector<VertexId> terminals;
        for (int v : he.vertices) terminals.push_back(vmap.at(h.vertex(v)));
        if (!is_connected_cover(g, s.edges, terminals))
            violate("subgraph of " + he.id + " does not connect the images of its vertices");
        std::set<VertexId> spanned;
        for (const auto& e : s.edges)
            for (const auto& v : g.edge_vertex_ids(g.edge_index(e))) spanned.insert(v);
        for (const auto& v : s.extra_vertices)
            if (!spanned.count(v)) violate("extra vertex " + v + " of " + he.id + " is not covered by its edges");
    }
    if (!r.ok || !w.replay) return r;

    // (4) replay to a copy of H under the vertex map
    r.replay_checked = true;
    std::vector<int> used, images;
    for (const auto& [e, id] : owner) used.push_back(g.edge_index(e));
    std::sort(used.begin(), used.end());
    for (const auto& v : h.vertices()) images.push_back(g.vertex_index(vmap.at(v)));
    Hypergraph result;
    try {
        result = apply_sequence(sub_hypergraph(g, used, images), *w.replay);
    } catch (const Error& ex) {
        violate(std::string("replay failed: ") + ex.what());
        return r;
    }
    std::set<VertexId> want_vertices;
    for (const auto& [a, b] : vmap) want_vertices.insert(b);
    std::set<VertexId> got_vertices(result.vertices().begin(), result.vertices().end());
    if (got_vertices != want_vertices) violate("replay leaves vertex set different from the images of V(H)");

    std::vector<std::pair<std::set<VertexId>, EdgeId>> pool;
    for (std::size_t i = 0; i < result.edge_count(); ++i) {
        auto vs = result.edge_vertex_ids(static_cast<int>(i));
        pool.emplace_back(std::set<VertexId>(vs.begin(), vs.end()), result.edge(static_cast<int>(i)).id);
    }
    for (const auto& he : h.edges()) {
        if (w.subgraph(he.id)->edges.empty()) continue;  // zero-edge subgraph of a size-1 hyperedge
        std::set<VertexId> want;
        for (int v : he.vertices) want.insert(vmap.at(h.vertex(v)));
        auto it = std::find_if(pool.begin(), pool.end(), [&](const auto& p) { return p.first == want; });
        if (it == pool.end()) {
            violate("replay result has no hyperedge matching " + he.id);
            continue;
        }
        r.replay_edge_map.emplace_back(he.id, it->second);
        pool.erase(it);
    }
    for (const auto& [vs, id] : pool) violate("replay leaves surplus hyperedge " + id);
    if (!r.ok) r.replay_edge_map.clear();
    return r;
}

// ---------------------------------------------------------------------------
// Pipeline

ImmersionWitness extract_witness(const Hypergraph& h, const Hypergraph& g, const DivisionPattern& member,
                                 const LabeledGraph& host, const EmbeddingWitness& ew) {
    auto resolve = [&](int node) -> const LabeledNode& {
        const LabeledNode* n = &host.node(node);
        for (std::size_t guard = 0; n->role == NodeRole::Added && n->anchor >= 0 && guard < host.node_count(); ++guard)
            n = &host.node(n->anchor);
        return *n;
    };
    auto fail = [](const std::string& msg) { return Error(ErrorCode::ProjectionFailure, msg); };

    ImmersionWitness w;
    std::vector<int> images;
    for (std::size_t v = 0; v < h.vertex_count(); ++v) {
        if (v >= ew.node_map.size()) throw fail("embedding does not place every terminal");
        const auto& n = resolve(ew.node_map[v]);
        if (n.role != NodeRole::Vertex) throw fail("terminal " + h.vertex(static_cast<int>(v)) + " lands on '" + n.id + "'");
        auto gi = g.find_vertex(n.origin);
        if (!gi) throw fail("host node '" + n.id + "' has no origin in G");
        w.vertex_map.emplace_back(h.vertex(static_cast<int>(v)), n.origin);
        images.push_back(*gi);
    }

    std::vector<std::vector<int>> edges_of(h.edge_count());
    std::vector<int> owner(g.edge_count(), -1);
    auto take = [&](int node, int e) {
        const auto& n = resolve(node);
        if (n.role != NodeRole::Edge) return;
        auto gi = g.find_edge(n.origin);
        if (!gi) throw fail("host node '" + n.id + "' has no origin in G");
        int& o = owner[static_cast<std::size_t>(*gi)];
        if (o >= 0 && o != e) throw fail("hyperedge " + n.origin + " used by two subgraphs");
        if (o < 0) edges_of[static_cast<std::size_t>(e)].push_back(*gi);
        o = e;
    };
    for (std::size_t l = 0; l < member.link_owner.size(); ++l)
        for (int node : ew.paths.at(l)) take(node, member.link_owner[l]);
    for (std::size_t p = 0; p < member.node_owner.size(); ++p)
        if (member.node_owner[p] >= 0) take(ew.node_map.at(p), member.node_owner[p]);

    for (std::size_t e = 0; e < h.edge_count(); ++e) {
        std::vector<int> terminals;
        for (int v : h.edge(static_cast<int>(e)).vertices) terminals.push_back(images[static_cast<std::size_t>(v)]);
        w.edge_subgraphs.emplace_back(h.edge(static_cast<int>(e)).id, make_subgraph(g, edges_of[e], terminals));
    }
    try {
        w.replay = build_replay(h, g, w);
    } catch (const Error& ex) {
        throw fail(std::string("replay construction: ") + ex.what());
    }
    auto report = verify_immersion(h, g, w);
    if (!report.ok) throw fail("projected witness does not verify: " + report.violations.front());
    return w;
}

Decision decide_immersion(const Hypergraph& h, const Hypergraph& g, const EngineOptions& opts) {
    Decision d;
    d.stats.method = "pipeline";
    d.stats.params = resolve_params(h, g, opts);
    const Params& params = d.stats.params;
    if (auto why = preflight(h, g)) {
        d.answer = Answer::No;
        d.stats.note = *why;
        return d;
    }
    if (h.vertex_count() == 0) {
        d.answer = Answer::Yes;
        d.witness = ImmersionWitness{};
        d.witness->replay = std::vector<OperationStep>{};
        for (const auto& v : g.vertices()) d.witness->replay->push_back(OperationStep::delete_vertex(v));
        return d;
    }

    DivisionSet ds = division_set(h, opts.divisions, opts.caps);
    d.stats.division_classes = ds.members.size();

    LabeledGraph host = m_factor_graph(g, params.M);
    std::vector<int> terminals(h.vertex_count());
    for (std::size_t i = 0; i < terminals.size(); ++i) terminals[i] = static_cast<int>(i);
    const bool literal = params.mode == DensifyMode::Literal;
    if (literal) host = densify(host, first_duplicates(host), params.L);

    const std::size_t n = ds.members.size();
    struct Outcome {
        EmbedStatus status = EmbedStatus::NotFound;
        std::optional<EmbeddingWitness> witness;
        std::uint64_t expansions = 0;
        bool ran = false;
    };
    std::vector<Outcome> outcomes(n);
    std::vector<std::unique_ptr<std::atomic<bool>>> cancel;
    for (std::size_t i = 0; i < n; ++i) cancel.push_back(std::make_unique<std::atomic<bool>>(false));
    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> best{n};

    auto test_member = [&](std::size_t i) {
        const DivisionPattern& member = ds.members[i];
        LabeledGraph pattern = literal ? densify(member.graph, terminals, params.L) : member.graph;
        PinConstraint pins = literal ? PinConstraint::none(pattern.node_count()) : PinConstraint::from_marks(pattern);
        SearchLimits limits = opts.limits;
        limits.cancel = cancel[i].get();
        auto res = find_embedding(pattern, host, pins, limits);
        Outcome& o = outcomes[i];
        o.ran = true;
        o.status = res.status;
        o.expansions = res.expansions;
        if (res.status == EmbedStatus::Found) {
            o.witness = std::move(res.witness);
            std::size_t cur = best.load();
            while (i < cur && !best.compare_exchange_weak(cur, i)) {
            }
            for (std::size_t j = i + 1; j < n; ++j) cancel[j]->store(true);
        }
    };

    const unsigned threads = std::max(1u, std::min<unsigned>(opts.threads, static_cast<unsigned>(n)));
    if (threads <= 1) {
        for (std::size_t i = 0; i < n; ++i) {
            test_member(i);
            if (outcomes[i].status == EmbedStatus::Found) break;
        }
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t)
            pool.emplace_back([&] {
                while (true) {
                    std::size_t i = next.fetch_add(1);
                    if (i >= n || i > best.load()) return;
                    test_member(i);
                }
            });
        for (auto& th : pool) th.join();
    }

    bool unknown = false;
    for (std::size_t i = 0; i < n; ++i) {
        const Outcome& o = outcomes[i];
        d.stats.expansions += o.expansions;
        if (o.ran) ++d.stats.classes_tested;
    }
    for (std::size_t i = 0; i < n; ++i) {
        const Outcome& o = outcomes[i];
        if (o.status == EmbedStatus::Found) {
            d.answer = Answer::Yes;
            d.stats.succeeding_class = static_cast<int>(i);
            d.witness = extract_witness(h, g, ds.members[i], host, *o.witness);
            return d;
        }
        if (o.status == EmbedStatus::BudgetExhausted) unknown = true;
    }
    d.answer = unknown ? Answer::Unknown : Answer::No;
    return d;
}

// ---------------------------------------------------------------------------
// Oracle

namespace {

class Oracle {
public:
    Oracle(const Hypergraph& h, const Hypergraph& g, const SearchLimits& limits)
        : h_(h), g_(g), limits_(limits), fmap_(h.vertex_count(), -1), gused_(g.vertex_count(), 0),
          eused_(g.edge_count(), 0), cover_(h.edge_count()) {
        for (std::size_t e = 0; e < h.edge_count(); ++e) order_.push_back(static_cast<int>(e));
        std::stable_sort(order_.begin(), order_.end(),
                         [&](int a, int b) { return h.edge(a).vertices.size() > h.edge(b).vertices.size(); });
        inc_ = g.incidence();
    }

    bool run() { return solve(0); }
    bool exhausted() const { return exhausted_; }
    std::uint64_t expansions() const { return expansions_; }

    ImmersionWitness witness() const {
        ImmersionWitness w;
        for (std::size_t v = 0; v < h_.vertex_count(); ++v)
            w.vertex_map.emplace_back(h_.vertex(static_cast<int>(v)), g_.vertex(fmap_[v]));
        for (std::size_t e = 0; e < h_.edge_count(); ++e) {
            std::vector<int> terminals;
            for (int v : h_.edge(static_cast<int>(e)).vertices) terminals.push_back(fmap_[static_cast<std::size_t>(v)]);
            w.edge_subgraphs.emplace_back(h_.edge(static_cast<int>(e)).id, make_subgraph(g_, cover_[e], terminals));
        }
        return w;
    }

private:
    const Hypergraph& h_;
    const Hypergraph& g_;
    const SearchLimits& limits_;
    std::vector<int> order_;
    std::vector<std::vector<int>> inc_;
    std::vector<int> fmap_;
    std::vector<char> gused_, eused_;
    std::vector<std::vector<int>> cover_;
    std::uint64_t expansions_ = 0;
    bool exhausted_ = false;

    bool tick() {
        if (exhausted_) return false;
        ++expansions_;
        if (limits_.max_expansions && expansions_ > limits_.max_expansions) exhausted_ = true;
        if ((expansions_ & 255) == 0) {
            if (limits_.deadline && std::chrono::steady_clock::now() >= *limits_.deadline) exhausted_ = true;
            if (limits_.cancel && limits_.cancel->load(std::memory_order_relaxed)) exhausted_ = true;
        }
        return !exhausted_;
    }

    bool has_free_edge(int gv) const {
        for (int e : inc_[static_cast<std::size_t>(gv)])
            if (!eused_[static_cast<std::size_t>(e)]) return true;
        return false;
    }

    bool solve(std::size_t k) {
        if (!tick()) return false;
        if (k == order_.size()) return place_isolated();
        std::size_t needy = 0, free_edges = 0;
        for (std::size_t i = k; i < order_.size(); ++i) needy += h_.edge(order_[i]).vertices.size() >= 2;
        for (char u : eused_) free_edges += !u;
        if (needy > free_edges) return false;
        return assign(k, 0);
    }

    // Map the still unmapped vertices of the k-th hyperedge, then cover it.
    bool assign(std::size_t k, std::size_t idx) {
        const auto& verts = h_.edge(order_[k]).vertices;
        if (idx == verts.size()) return cover(k);
        int u = verts[idx];
        if (fmap_[static_cast<std::size_t>(u)] >= 0) return assign(k, idx + 1);
        for (std::size_t gv = 0; gv < g_.vertex_count(); ++gv) {
            if (gused_[gv]) continue;
            if (verts.size() >= 2 && !has_free_edge(static_cast<int>(gv))) continue;
            if (!tick()) return false;
            fmap_[static_cast<std::size_t>(u)] = static_cast<int>(gv);
            gused_[gv] = 1;
            if (assign(k, idx + 1)) return true;
            gused_[gv] = 0;
            fmap_[static_cast<std::size_t>(u)] = -1;
            if (exhausted_) return false;
        }
        return false;
    }

    bool cover(std::size_t k) {
        int e = order_[k];
        std::vector<int> terminals;
        for (int v : h_.edge(e).vertices) terminals.push_back(fmap_[static_cast<std::size_t>(v)]);
        return enumerate_covers(terminals, [&](const std::vector<int>& s) {
            for (int x : s) eused_[static_cast<std::size_t>(x)] = 1;
            cover_[static_cast<std::size_t>(e)] = s;
            if (solve(k + 1)) return true;
            for (int x : s) eused_[static_cast<std::size_t>(x)] = 0;
            cover_[static_cast<std::size_t>(e)].clear();
            return false;
        });
    }

    // Minimal connected covers of the terminals among free edges. Each is
    // grown from an edge at the first terminal by include/exclude branching
    // on frontier edges; growth stops as soon as the terminals are covered.
    bool enumerate_covers(const std::vector<int>& terminals, const std::function<bool(const std::vector<int>&)>& cb) {
        if (terminals.size() <= 1) return cb({});
        std::vector<char> banned(g_.edge_count(), 0);
        for (int s : inc_[static_cast<std::size_t>(terminals[0])]) {
            if (eused_[static_cast<std::size_t>(s)] || banned[static_cast<std::size_t>(s)]) continue;
            std::vector<int> set{s};
            std::vector<int> covered(g_.vertex_count(), 0);
            for (int v : g_.edge(s).vertices) ++covered[static_cast<std::size_t>(v)];
            if (grow(set, covered, banned, terminals, cb)) return true;
            if (exhausted_) return false;
            banned[static_cast<std::size_t>(s)] = 1;
        }
        return false;
    }

    bool grow(std::vector<int>& set, std::vector<int>& covered, std::vector<char>& banned,
              const std::vector<int>& terminals, const std::function<bool(const std::vector<int>&)>& cb) {
        if (!tick()) return false;
        bool done = std::all_of(terminals.begin(), terminals.end(),
                                [&](int t) { return covered[static_cast<std::size_t>(t)] > 0; });
        if (done) return minimal(set, terminals) && cb(set);
        int f = -1;
        for (std::size_t e = 0; e < g_.edge_count() && f < 0; ++e) {
            if (eused_[e] || banned[e] || std::find(set.begin(), set.end(), static_cast<int>(e)) != set.end()) continue;
            for (int v : g_.edge(static_cast<int>(e)).vertices)
                if (covered[static_cast<std::size_t>(v)]) {
                    f = static_cast<int>(e);
                    break;
                }
        }
        if (f < 0) return false;
        set.push_back(f);
        for (int v : g_.edge(f).vertices) ++covered[static_cast<std::size_t>(v)];
        bool ok = grow(set, covered, banned, terminals, cb);
        for (int v : g_.edge(f).vertices) --covered[static_cast<std::size_t>(v)];
        set.pop_back();
        if (ok) return true;
        if (exhausted_) return false;
        banned[static_cast<std::size_t>(f)] = 1;
        ok = grow(set, covered, banned, terminals, cb);
        banned[static_cast<std::size_t>(f)] = 0;
        return ok;
    }

    bool minimal(const std::vector<int>& set, const std::vector<int>& terminals) const {
        for (std::size_t i = 0; i < set.size(); ++i) {
            std::vector<int> rest;
            for (std::size_t j = 0; j < set.size(); ++j)
                if (j != i) rest.push_back(set[j]);
            if (is_connected_cover_idx(g_, rest, terminals)) return false;
        }
        return true;
    }

    bool place_isolated() {
        std::size_t gv = 0;
        std::vector<std::pair<int, int>> placed;
        for (std::size_t v = 0; v < h_.vertex_count(); ++v) {
            if (fmap_[v] >= 0) continue;
            while (gv < g_.vertex_count() && gused_[gv]) ++gv;
            if (gv == g_.vertex_count()) {
                for (auto [u, x] : placed) {
                    fmap_[static_cast<std::size_t>(u)] = -1;
                    gused_[static_cast<std::size_t>(x)] = 0;
                }
                return false;
            }
            fmap_[v] = static_cast<int>(gv);
            gused_[gv] = 1;
            placed.emplace_back(static_cast<int>(v), static_cast<int>(gv));
        }
        return true;
    }
};

}  // namespace

Decision immersion_oracle(const Hypergraph& h, const Hypergraph& g, const SearchLimits& limits) {
    Decision d;
    d.stats.method = "oracle";
    if (auto why = preflight(h, g)) {
        d.answer = Answer::No;
        d.stats.note = *why;
        return d;
    }
    Oracle o(h, g, limits);
    bool found = o.run();
    d.stats.expansions = o.expansions();
    if (!found) {
        d.answer = o.exhausted() ? Answer::Unknown : Answer::No;
        return d;
    }
    d.answer = Answer::Yes;
    d.witness = o.witness();
    d.witness->replay = build_replay(h, g, *d.witness);
    return d;
}

// ---------------------------------------------------------------------------
// Dual immersion

Decision decide_dual_immersion(const TransposeResult& x, const TransposeResult& y, const EngineOptions& opts,
                               Method method) {
    Hypergraph h = untranspose(x);
    Hypergraph g = untranspose(y);
    Decision d = method == Method::Pipeline ? decide_immersion(h, g, opts) : immersion_oracle(h, g, opts.limits);
    if (d.answer != Answer::Yes) return d;
    DualWitness dw;
    for (const auto& e : x.graph.edges()) dw.edge_map.emplace_back(e.id, *d.witness->image(e.id));
    for (const auto& e : x.dropped) dw.edge_map.emplace_back(e, *d.witness->image(e));
    for (const auto& v : x.graph.vertices()) dw.vertex_subgraphs.emplace_back(v, d.witness->subgraph(v)->edges);
    d.dual_witness = std::move(dw);
    return d;
}

Decision decide_dual_immersion(const Hypergraph& x, const Hypergraph& y, const EngineOptions& opts, Method method) {
    return decide_dual_immersion(TransposeResult{x, {}}, TransposeResult{y, {}}, opts, method);
}

namespace {

// x_empty / y_empty: hyperedges without vertices (isolated vertices dropped by transpose).
VerificationReport verify_dual(const Hypergraph& x, const std::vector<EdgeId>& x_empty, const Hypergraph& y,
                               const std::vector<EdgeId>& y_empty, const DualWitness& w) {
    VerificationReport r;
    auto violate = [&](std::string msg) {
        r.ok = false;
        r.violations.push_back(std::move(msg));
    };

    // (1) injective hyperedge map
    std::map<EdgeId, int> eta;
    std::set<int> targets;
    auto y_target = [&](const EdgeId& b) -> std::optional<int> {
        if (auto f = y.find_edge(b)) return *f;
        auto it = std::find(y_empty.begin(), y_empty.end(), b);
        if (it == y_empty.end()) return std::nullopt;
        return static_cast<int>(y.edge_count() + static_cast<std::size_t>(it - y_empty.begin()));
    };
    auto x_known = [&](const EdgeId& a) {
        return x.find_edge(a).has_value() || std::find(x_empty.begin(), x_empty.end(), a) != x_empty.end();
    };
    for (const auto& [a, b] : w.edge_map) {
        bool xa = x_known(a);
        auto yb = y_target(b);
        if (!xa) violate("edge map names unknown hyperedge: " + a);
        if (!yb) violate("edge map targets unknown hyperedge: " + b);
        if (!xa || !yb) continue;
        if (!eta.emplace(a, *yb).second) violate("edge map lists " + a + " twice");
        if (!targets.insert(*yb).second) violate("edge map not injective at " + b);
    }
    for (const auto& e : x.edges())
        if (!eta.count(e.id)) violate("edge map missing: " + e.id);
    for (const auto& e : x_empty)
        if (!eta.count(e)) violate("edge map missing: " + e);
    if (!r.ok) return r;

    // (2) each vertex's subgraph is connected and touches the images of its hyperedges
    std::map<VertexId, std::vector<int>> sub;
    for (const auto& [v, vs] : w.vertex_subgraphs) {
        if (!x.find_vertex(v)) {
            violate("vertex subgraph for unknown vertex: " + v);
            continue;
        }
        auto& s = sub[v];
        for (const auto& u : vs) {
            auto yu = y.find_vertex(u);
            if (!yu) violate("vertex subgraph of " + v + " uses unknown vertex: " + u);
            else s.push_back(*yu);
        }
    }
    auto inc = x.incidence();
    for (std::size_t v = 0; v < x.vertex_count(); ++v) {
        const auto& name = x.vertex(static_cast<int>(v));
        if (!sub.count(name)) {
            violate("no vertex subgraph for " + name);
            continue;
        }
        const auto& s = sub[name];
        // Bipartite union-find over chosen vertices and all hyperedges of Y.
        const std::size_t nv = y.vertex_count();
        std::vector<int> parent(nv + y.edge_count() + y_empty.size());
        for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = static_cast<int>(i);
        std::function<int(int)> find = [&](int a) {
            return parent[static_cast<std::size_t>(a)] == a ? a : parent[static_cast<std::size_t>(a)] = find(parent[static_cast<std::size_t>(a)]);
        };
        std::vector<char> chosen(nv, 0);
        for (int u : s) chosen[static_cast<std::size_t>(u)] = 1;
        for (std::size_t f = 0; f < y.edge_count(); ++f)
            for (int u : y.edge(static_cast<int>(f)).vertices)
                if (chosen[static_cast<std::size_t>(u)]) parent[static_cast<std::size_t>(find(u))] = find(static_cast<int>(nv + f));
        int root = -1;
        for (int e : inc[v]) {
            int r0 = find(static_cast<int>(nv) + eta.at(x.edge(e).id));
            if (root < 0) root = r0;
            else if (r0 != root) {
                violate("vertex subgraph of " + name + " does not connect the images of its hyperedges");
                break;
            }
        }
    }

    // (3) pairwise vertex-disjointness
    std::map<int, VertexId> owner;
    for (const auto& [v, s] : sub)
        for (int u : s) {
            auto [it, fresh] = owner.emplace(u, v);
            if (!fresh && it->second != v) violate("vertex-disjointness violated: " + y.vertex(u));
        }
    return r;
}

}  // namespace

VerificationReport verify_dual_immersion(const Hypergraph& x, const Hypergraph& y, const DualWitness& w) {
    return verify_dual(x, {}, y, {}, w);
}

VerificationReport verify_dual_immersion(const TransposeResult& x, const TransposeResult& y, const DualWitness& w) {
    return verify_dual(x.graph, x.dropped, y.graph, y.dropped, w);
}

}  // namespace himm
