#include "himm/isomorphism.hpp"

namespace himm {

ColoredGraph colored_factor_graph(const Hypergraph& g, const IsoMarking& marks) {
    if (!marks.vertex_marks.empty() && marks.vertex_marks.size() != g.vertex_count())
        throw Error(ErrorCode::InvalidArgument, "vertex marks must cover all vertices");
    if (!marks.edge_marks.empty() && marks.edge_marks.size() != g.edge_count())
        throw Error(ErrorCode::InvalidArgument, "edge marks must cover all edges");
    ColoredGraph cg;
    const auto nv = g.vertex_count();
    for (std::size_t v = 0; v < nv; ++v) {
        bool added = !marks.vertex_marks.empty() && marks.vertex_marks[v] == VertexMark::Added;
        cg.colors.push_back(added ? "v+" : "v");
    }
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
        cg.colors.push_back(marks.edge_marks.empty() ? "e" : "e:" + marks.edge_marks[e]);
        for (int v : g.edge(static_cast<int>(e)).vertices) cg.links.emplace_back(v, static_cast<int>(nv + e));
    }
    return cg;
}

std::string canonical_key(const Hypergraph& g, const IsoMarking& marks) {
    return canonical_form(colored_factor_graph(g, marks)).certificate;
}

std::optional<HypergraphIsomorphism> find_isomorphism(const Hypergraph& a, const Hypergraph& b, const IsoMarking& ma,
                                                      const IsoMarking& mb) {
    if (a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count()) return std::nullopt;
    auto map = isomorphism(colored_factor_graph(a, ma), colored_factor_graph(b, mb));
    if (!map) return std::nullopt;
    HypergraphIsomorphism iso;
    const int nv_a = static_cast<int>(a.vertex_count());
    for (std::size_t i = 0; i < map->size(); ++i) {
        int target = (*map)[i];
        if (static_cast<int>(i) < nv_a)
            iso.vertex_map.push_back(target);
        else
            iso.edge_map.push_back(target - nv_a);
    }
    return iso;
}

bool are_isomorphic(const Hypergraph& a, const Hypergraph& b, const IsoMarking& ma, const IsoMarking& mb) {
    return find_isomorphism(a, b, ma, mb).has_value();
}

}  // namespace himm
