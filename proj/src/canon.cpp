#include "himm/canon.hpp"

#include <algorithm>
#include <map>
#include <optional>

#include "himm/error.hpp"

namespace himm {
namespace {

struct Refiner {
    std::size_t n;
    std::vector<std::string> colors;
    std::vector<std::vector<std::pair<int, int>>> nbrs;  // (neighbour, multiplicity)
    std::vector<std::vector<int>> mult;

    std::optional<std::string> best_cert;
    std::vector<int> best_order;

    explicit Refiner(const ColoredGraph& g) : n(g.colors.size()), colors(g.colors), nbrs(n), mult(n, std::vector<int>(n, 0)) {
        for (auto [a, b] : g.links) {
            if (a < 0 || b < 0 || static_cast<std::size_t>(a) >= n || static_cast<std::size_t>(b) >= n)
                throw Error(ErrorCode::UnknownNode, "link endpoint out of range");
            if (a == b) throw Error(ErrorCode::InvalidArgument, "loops are not supported in canonical forms");
            ++mult[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
            ++mult[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)];
        }
        for (std::size_t v = 0; v < n; ++v)
            for (std::size_t u = 0; u < n; ++u)
                if (mult[v][u] > 0) nbrs[v].emplace_back(static_cast<int>(u), mult[v][u]);
    }

    // Dense ranks from sortable keys; order of keys is preserved.
    template <typename Key>
    static std::vector<int> densify(const std::vector<Key>& keys) {
        std::vector<Key> sorted = keys;
        std::sort(sorted.begin(), sorted.end());
        sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
        std::vector<int> out(keys.size());
        for (std::size_t i = 0; i < keys.size(); ++i)
            out[i] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), keys[i]) - sorted.begin());
        return out;
    }

    static std::size_t cell_count(const std::vector<int>& ranks) {
        std::vector<int> r = ranks;
        std::sort(r.begin(), r.end());
        return static_cast<std::size_t>(std::unique(r.begin(), r.end()) - r.begin());
    }

    std::vector<int> refine(std::vector<int> ranks) const {
        std::size_t cells = cell_count(ranks);
        while (true) {
            std::vector<std::pair<int, std::vector<std::pair<int, int>>>> keys(n);
            for (std::size_t v = 0; v < n; ++v) {
                keys[v].first = ranks[v];
                for (auto [u, m] : nbrs[v]) keys[v].second.emplace_back(ranks[static_cast<std::size_t>(u)], m);
                std::sort(keys[v].second.begin(), keys[v].second.end());
            }
            auto next = densify(keys);
            std::size_t next_cells = cell_count(next);
            ranks = std::move(next);
            if (next_cells == cells) return ranks;
            cells = next_cells;
        }
    }

    void leaf(const std::vector<int>& ranks) {
        std::vector<int> order(n);
        for (std::size_t v = 0; v < n; ++v) order[static_cast<std::size_t>(ranks[v])] = static_cast<int>(v);
        std::string cert;
        for (int v : order) {
            cert += colors[static_cast<std::size_t>(v)];
            cert += '\x1f';
        }
        cert += '|';
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                int m = mult[static_cast<std::size_t>(order[i])][static_cast<std::size_t>(order[j])];
                if (m == 0) continue;
                cert += std::to_string(i) + '-' + std::to_string(j) + 'x' + std::to_string(m) + ';';
            }
        if (!best_cert || cert < *best_cert) {
            best_cert = std::move(cert);
            best_order = std::move(order);
        }
    }

    void search(std::vector<int> ranks) {
        ranks = refine(std::move(ranks));
        // first non-singleton cell
        std::vector<int> count(n, 0);
        for (int r : ranks) ++count[static_cast<std::size_t>(r)];
        int target = -1;
        for (std::size_t r = 0; r < n; ++r)
            if (count[r] > 1) {
                target = static_cast<int>(r);
                break;
            }
        if (target < 0) {
            leaf(ranks);
            return;
        }
        for (std::size_t v = 0; v < n; ++v) {
            if (ranks[v] != target) continue;
            std::vector<int> next(n);
            for (std::size_t x = 0; x < n; ++x) next[x] = 2 * ranks[x] + ((ranks[x] == target && x != v) ? 1 : 0);
            search(densify(next));
        }
    }
};

}  // namespace

CanonicalForm canonical_form(const ColoredGraph& g) {
    Refiner r(g);
    if (r.n == 0) return {"|", {}};
    r.search(Refiner::densify(g.colors));
    return {*r.best_cert, r.best_order};
}

std::optional<std::vector<int>> isomorphism(const ColoredGraph& a, const ColoredGraph& b) {
    if (a.colors.size() != b.colors.size() || a.links.size() != b.links.size()) return std::nullopt;
    auto ca = canonical_form(a);
    auto cb = canonical_form(b);
    if (ca.certificate != cb.certificate) return std::nullopt;
    std::vector<int> map(a.colors.size());
    for (std::size_t i = 0; i < ca.order.size(); ++i) map[static_cast<std::size_t>(ca.order[i])] = cb.order[i];
    return map;
}

}  // namespace himm
