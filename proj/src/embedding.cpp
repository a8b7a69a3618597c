#include "himm/embedding.hpp"

#include <pthread.h>

#include <algorithm>
#include <exception>
#include <map>
#include <optional>
#include <unordered_map>

#include "himm/error.hpp"

namespace himm {

PinConstraint PinConstraint::from_marks(const LabeledGraph& pattern) {
    PinConstraint pc = none(pattern.node_count());
    for (int p : pattern.pinned_nodes()) pc.pinned[static_cast<std::size_t>(p)] = 1;
    return pc;
}

std::string_view to_string(EmbedStatus s) {
    switch (s) {
        case EmbedStatus::Found: return "found";
        case EmbedStatus::NotFound: return "not-found";
        case EmbedStatus::BudgetExhausted: return "budget-exhausted";
    }
    return "?";
}

namespace {

constexpr int kFree = -1;
constexpr int kPath = -2;
constexpr int kInf = 1 << 29;

std::uint64_t pair_key(int a, int b) {
    if (a > b) std::swap(a, b);
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) | static_cast<std::uint32_t>(b);
}

std::unordered_map<std::uint64_t, int> multiplicities(const LabeledGraph& g) {
    std::unordered_map<std::uint64_t, int> m;
    for (auto [a, b] : g.links()) ++m[pair_key(a, b)];
    return m;
}

struct Task {
    enum Kind { Root, Extend, Close } kind;
    int node;  // pattern node placed by Root / Extend
    int link;  // pattern link routed by Extend / Close
    int from;  // already placed endpoint
};

class Search {
public:
    Search(const LabeledGraph& pattern, const LabeledGraph& host, const PinConstraint& pins, const SearchLimits& limits)
        : P_(pattern), H_(host), pins_(pins), limits_(limits), np_(pattern.node_count()), nh_(host.node_count()) {
        prepare_host();
        prepare_pattern();
    }

    EmbedResult run() {
        EmbedResult r;
        bool found = np_ <= nh_ && solve(0);
        r.expansions = expansions_;
        if (found) {
            r.status = EmbedStatus::Found;
            r.witness = EmbeddingWitness{pmap_, paths_};
            for (std::size_t l = 0; l < P_.link_count(); ++l) {
                auto& path = r.witness->paths[l];
                if (path.front() != pmap_[static_cast<std::size_t>(P_.links()[l].first)]) std::reverse(path.begin(), path.end());
            }
        } else {
            r.status = exhausted_ ? EmbedStatus::BudgetExhausted : EmbedStatus::NotFound;
        }
        return r;
    }

private:
    const LabeledGraph& P_;
    const LabeledGraph& H_;
    const PinConstraint& pins_;
    const SearchLimits& limits_;
    std::size_t np_, nh_;

    std::vector<std::vector<int>> hnbr_;  // distinct neighbours
    std::unordered_map<std::uint64_t, int> hmult_;
    std::vector<int> hdeg_;
    std::vector<int> hclass_, hrank_, class_used_;
    std::vector<int> horigin_;  // pin-eligible origin index, -1 otherwise

    std::vector<int> pdeg_;
    std::vector<std::vector<int>> plinks_;  // incident link indices per pattern node
    std::vector<Task> tasks_;

    std::vector<int> pmap_, hstate_, pending_, adjcnt_;
    std::vector<std::vector<int>> paths_;
    std::vector<char> origin_used_;
    std::unordered_map<std::uint64_t, int> direct_used_;
    std::vector<int> path_;

    std::uint64_t expansions_ = 0;
    bool exhausted_ = false;

    // ---- setup --------------------------------------------------------

    void prepare_host() {
        hnbr_.resize(nh_);
        hdeg_.resize(nh_);
        for (std::size_t h = 0; h < nh_; ++h) {
            auto nb = H_.neighbors(static_cast<int>(h));
            hdeg_[h] = static_cast<int>(nb.size());
            std::sort(nb.begin(), nb.end());
            nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
            hnbr_[h] = std::move(nb);
        }
        hmult_ = multiplicities(H_);

        std::map<std::string, int> origins;
        bool unique_origins = true;
        horigin_.assign(nh_, -1);
        for (std::size_t h = 0; h < nh_; ++h) {
            const auto& n = H_.node(static_cast<int>(h));
            if (!n.pin_eligible()) continue;
            auto [it, fresh] = origins.emplace(n.origin, static_cast<int>(origins.size()));
            if (!fresh) unique_origins = false;
            horigin_[h] = it->second;
        }
        origin_used_.assign(origins.size(), 0);

        // Twin classes: equal open neighbourhoods, or equal closed
        // neighbourhoods, as multisets. Members of a class are interchangeable
        // by a host automorphism, so only the least unused one is ever tried.
        std::map<std::vector<int>, int> open_key, closed_key;
        std::vector<int> open_id(nh_), closed_id(nh_);
        for (std::size_t h = 0; h < nh_; ++h) {
            auto nb = H_.neighbors(static_cast<int>(h));
            std::sort(nb.begin(), nb.end());
            int pin_tag = horigin_[h] < 0 ? -1 : (unique_origins ? 0 : horigin_[h] + 1);
            auto ok = nb;
            ok.push_back(-2 - pin_tag - 2);
            open_id[h] = open_key.try_emplace(ok, static_cast<int>(open_key.size())).first->second;
            auto ck = nb;
            ck.insert(std::upper_bound(ck.begin(), ck.end(), static_cast<int>(h)), static_cast<int>(h));
            ck.push_back(-2 - pin_tag - 2);
            closed_id[h] = closed_key.try_emplace(ck, static_cast<int>(closed_key.size())).first->second;
        }
        std::map<int, int> open_size, closed_size;
        for (std::size_t h = 0; h < nh_; ++h) {
            ++open_size[open_id[h]];
            ++closed_size[closed_id[h]];
        }
        std::map<std::pair<int, int>, int> class_of;
        hclass_.resize(nh_);
        hrank_.resize(nh_);
        std::vector<int> class_count;
        for (std::size_t h = 0; h < nh_; ++h) {
            std::pair<int, int> key;
            if (open_size[open_id[h]] > 1) key = {0, open_id[h]};
            else if (closed_size[closed_id[h]] > 1) key = {1, closed_id[h]};
            else key = {2, static_cast<int>(h)};
            auto [it, fresh] = class_of.try_emplace(key, static_cast<int>(class_count.size()));
            if (fresh) class_count.push_back(0);
            hclass_[h] = it->second;
            hrank_[h] = class_count[static_cast<std::size_t>(it->second)]++;
        }
        class_used_.assign(class_count.size(), 0);

        hstate_.assign(nh_, kFree);
        adjcnt_.assign(nh_, 0);
    }

    bool pinned(int p) const { return pins_.is_pinned(p); }

    void prepare_pattern() {
        pdeg_.resize(np_);
        plinks_.resize(np_);
        for (std::size_t l = 0; l < P_.link_count(); ++l) {
            auto [a, b] = P_.links()[l];
            plinks_[static_cast<std::size_t>(a)].push_back(static_cast<int>(l));
            plinks_[static_cast<std::size_t>(b)].push_back(static_cast<int>(l));
        }
        for (std::size_t p = 0; p < np_; ++p) pdeg_[p] = static_cast<int>(plinks_[p].size());
        pmap_.assign(np_, -1);
        pending_ = pdeg_;
        paths_.assign(P_.link_count(), {});

        // Placement order: gadget clique members last; otherwise grow from
        // placed nodes, preferring pinned and high-degree nodes.
        std::vector<char> placed(np_, 0);
        std::vector<int> to_placed(np_, 0);
        for (std::size_t step = 0; step < np_; ++step) {
            int best = -1;
            auto key = [&](int p) {
                const auto& n = P_.node(p);
                bool gadget = n.role == NodeRole::Added && n.anchor >= 0;
                return std::make_tuple(!gadget, to_placed[static_cast<std::size_t>(p)] > 0, pinned(p),
                                       to_placed[static_cast<std::size_t>(p)], pdeg_[static_cast<std::size_t>(p)], -p);
            };
            for (std::size_t p = 0; p < np_; ++p)
                if (!placed[p] && (best < 0 || key(static_cast<int>(p)) > key(best))) best = static_cast<int>(p);
            std::vector<int> back;
            for (int l : plinks_[static_cast<std::size_t>(best)]) {
                int other = other_end(l, best);
                if (placed[static_cast<std::size_t>(other)]) back.push_back(l);
            }
            if (back.empty()) {
                tasks_.push_back({Task::Root, best, -1, -1});
            } else {
                tasks_.push_back({Task::Extend, best, back[0], other_end(back[0], best)});
                for (std::size_t i = 1; i < back.size(); ++i)
                    tasks_.push_back({Task::Close, best, back[i], other_end(back[i], best)});
            }
            placed[static_cast<std::size_t>(best)] = 1;
            for (int l : plinks_[static_cast<std::size_t>(best)]) ++to_placed[static_cast<std::size_t>(other_end(l, best))];
        }
    }

    int other_end(int l, int p) const {
        auto [a, b] = P_.links()[static_cast<std::size_t>(l)];
        return a == p ? b : a;
    }

    // ---- state ----------------------------------------------------------

    bool tick() {
        if (exhausted_) return false;
        ++expansions_;
        if (limits_.max_expansions && expansions_ > limits_.max_expansions) exhausted_ = true;
        if ((expansions_ & 255) == 1) {
            if (limits_.deadline && std::chrono::steady_clock::now() >= *limits_.deadline) exhausted_ = true;
            if (limits_.cancel && limits_.cancel->load(std::memory_order_relaxed)) exhausted_ = true;
        }
        return !exhausted_;
    }

    bool least_unused(int h) const {
        return hrank_[static_cast<std::size_t>(h)] == class_used_[static_cast<std::size_t>(hclass_[static_cast<std::size_t>(h)])];
    }

    int mult(int a, int b) const {
        auto it = hmult_.find(pair_key(a, b));
        return it == hmult_.end() ? 0 : it->second;
    }

    int direct_available(int a, int b) const {
        auto it = direct_used_.find(pair_key(a, b));
        return mult(a, b) - (it == direct_used_.end() ? 0 : it->second);
    }

    bool adjacent(int a, int b) const { return hmult_.count(pair_key(a, b)) > 0; }

    bool compatible(int p, int h) const {
        auto hi = static_cast<std::size_t>(h);
        if (hstate_[hi] != kFree || hdeg_[hi] < pdeg_[static_cast<std::size_t>(p)]) return false;
        if (pinned(p)) {
            if (horigin_[hi] < 0 || origin_used_[static_cast<std::size_t>(horigin_[hi])]) return false;
        }
        return true;
    }

    void occupy(int h, int state) {
        auto hi = static_cast<std::size_t>(h);
        hstate_[hi] = state;
        ++class_used_[static_cast<std::size_t>(hclass_[hi])];
    }

    void release(int h) {
        auto hi = static_cast<std::size_t>(h);
        hstate_[hi] = kFree;
        --class_used_[static_cast<std::size_t>(hclass_[hi])];
    }

    void place(int p, int h) {
        pmap_[static_cast<std::size_t>(p)] = h;
        occupy(h, p);
        if (pinned(p)) origin_used_[static_cast<std::size_t>(horigin_[static_cast<std::size_t>(h)])] = 1;
    }

    void unplace(int p) {
        int h = pmap_[static_cast<std::size_t>(p)];
        if (pinned(p)) origin_used_[static_cast<std::size_t>(horigin_[static_cast<std::size_t>(h)])] = 0;
        release(h);
        pmap_[static_cast<std::size_t>(p)] = -1;
    }

    void push_path(int h) {
        path_.push_back(h);
        for (int y : hnbr_[static_cast<std::size_t>(h)]) ++adjcnt_[static_cast<std::size_t>(y)];
    }

    void pop_path() {
        int h = path_.back();
        path_.pop_back();
        for (int y : hnbr_[static_cast<std::size_t>(h)]) --adjcnt_[static_cast<std::size_t>(y)];
    }

    // Multi-source BFS through free host nodes.
    std::vector<int> distances(const std::vector<int>& sources) const {
        std::vector<int> dist(nh_, kInf);
        std::vector<int> queue;
        for (int s : sources) {
            dist[static_cast<std::size_t>(s)] = 0;
            queue.push_back(s);
        }
        for (std::size_t i = 0; i < queue.size(); ++i) {
            int x = queue[i];
            for (int y : hnbr_[static_cast<std::size_t>(x)]) {
                auto yi = static_cast<std::size_t>(y);
                if (hstate_[yi] != kFree || dist[yi] != kInf) continue;
                dist[yi] = dist[static_cast<std::size_t>(x)] + 1;
                queue.push_back(y);
            }
        }
        return dist;
    }

    int free_count() const { return static_cast<int>(std::count(hstate_.begin(), hstate_.end(), kFree)); }

    // Necessary conditions on the remaining work: enough room around every
    // placed node, and every pending link has a free region to run through.
    bool feasible() {
        std::vector<int> comp(nh_, -1), comp_maxdeg;
        std::vector<char> comp_pin;
        int free_pins = 0, free_nodes = 0;
        for (std::size_t s = 0; s < nh_; ++s) {
            if (hstate_[s] != kFree || comp[s] >= 0) continue;
            int c = static_cast<int>(comp_maxdeg.size());
            comp_maxdeg.push_back(0);
            comp_pin.push_back(0);
            std::vector<int> queue{static_cast<int>(s)};
            comp[s] = c;
            for (std::size_t i = 0; i < queue.size(); ++i) {
                auto x = static_cast<std::size_t>(queue[i]);
                ++free_nodes;
                comp_maxdeg.back() = std::max(comp_maxdeg.back(), hdeg_[x]);
                if (horigin_[x] >= 0 && !origin_used_[static_cast<std::size_t>(horigin_[x])]) {
                    comp_pin.back() = 1;
                    ++free_pins;
                }
                for (int y : hnbr_[x]) {
                    auto yi = static_cast<std::size_t>(y);
                    if (hstate_[yi] == kFree && comp[yi] < 0) {
                        comp[yi] = c;
                        queue.push_back(y);
                    }
                }
            }
        }

        int unplaced = 0, unplaced_pins = 0;
        for (std::size_t p = 0; p < np_; ++p) {
            if (pmap_[p] >= 0) continue;
            ++unplaced;
            if (pinned(static_cast<int>(p))) ++unplaced_pins;
        }
        if (unplaced > free_nodes || unplaced_pins > free_pins) return false;

        auto comps_around = [&](int h) {
            std::vector<int> out;
            for (int y : hnbr_[static_cast<std::size_t>(h)])
                if (comp[static_cast<std::size_t>(y)] >= 0) out.push_back(comp[static_cast<std::size_t>(y)]);
            std::sort(out.begin(), out.end());
            out.erase(std::unique(out.begin(), out.end()), out.end());
            return out;
        };

        for (std::size_t p = 0; p < np_; ++p) {
            int h = pmap_[p];
            if (h < 0 || pending_[p] == 0) continue;
            int cap = 0;
            for (int y : hnbr_[static_cast<std::size_t>(h)]) {
                int st = hstate_[static_cast<std::size_t>(y)];
                if (st == kFree) cap += mult(h, y);
                else if (st >= 0 && pending_[static_cast<std::size_t>(st)] > 0) cap += direct_available(h, y);
            }
            if (cap < pending_[p]) return false;

            auto around = comps_around(h);
            for (int l : plinks_[p]) {
                if (!paths_[static_cast<std::size_t>(l)].empty()) continue;
                int q = other_end(l, static_cast<int>(p));
                int hq = pmap_[static_cast<std::size_t>(q)];
                if (hq >= 0) {
                    if (direct_available(h, hq) > 0) continue;
                    auto other = comps_around(hq);
                    std::vector<int> both;
                    std::set_intersection(around.begin(), around.end(), other.begin(), other.end(), std::back_inserter(both));
                    if (both.empty()) return false;
                } else {
                    bool ok = false;
                    for (int c : around) {
                        if (comp_maxdeg[static_cast<std::size_t>(c)] < pdeg_[static_cast<std::size_t>(q)]) continue;
                        if (pinned(q) && !comp_pin[static_cast<std::size_t>(c)]) continue;
                        ok = true;
                        break;
                    }
                    if (!ok) return false;
                }
            }
        }
        return true;
    }

    // ---- search ---------------------------------------------------------

    bool solve(std::size_t t) {
        if (t == tasks_.size()) return true;
        if (!tick()) return false;
        const Task& task = tasks_[t];
        switch (task.kind) {
            case Task::Root: return root(t, task);
            case Task::Extend: return extend(t, task);
            case Task::Close: return close(t, task);
        }
        return false;
    }

    bool root(std::size_t t, const Task& task) {
        for (std::size_t h = 0; h < nh_; ++h) {
            int hi = static_cast<int>(h);
            if (!compatible(task.node, hi) || !least_unused(hi)) continue;
            if (!tick()) return false;
            place(task.node, hi);
            if (feasible() && solve(t + 1)) return true;
            unplace(task.node);
            if (exhausted_) return false;
        }
        return false;
    }

    // The finished path is parked in paths_ so the next task starts with an
    // empty working path; unroute puts it back.
    void route(int link, int a, int b) {
        if (path_.size() == 2) ++direct_used_[pair_key(path_.front(), path_.back())];
        paths_[static_cast<std::size_t>(link)] = path_;
        while (!path_.empty()) pop_path();
        --pending_[static_cast<std::size_t>(a)];
        --pending_[static_cast<std::size_t>(b)];
    }

    void unroute(int link, int a, int b) {
        auto& path = paths_[static_cast<std::size_t>(link)];
        if (path.size() == 2) --direct_used_[pair_key(path.front(), path.back())];
        for (int h : path) push_path(h);
        path.clear();
        ++pending_[static_cast<std::size_t>(a)];
        ++pending_[static_cast<std::size_t>(b)];
    }

    // The final node of a path may only touch the path at its predecessor,
    // plus the start when the two are joined by a (parallel) direct link.
    bool target_chordless(int target, int start, int last) const {
        int c = adjcnt_[static_cast<std::size_t>(target)];
        if (last != start && adjacent(start, target)) --c;
        return c == 1;
    }

    bool extend(std::size_t t, const Task& task) {
        int start = pmap_[static_cast<std::size_t>(task.from)];
        std::vector<int> candidates;
        for (std::size_t h = 0; h < nh_; ++h)
            if (compatible(task.node, static_cast<int>(h))) candidates.push_back(static_cast<int>(h));
        if (candidates.empty()) return false;
        auto dist = distances(candidates);
        int dmin = kInf;
        for (int y : hnbr_[static_cast<std::size_t>(start)])
            if (hstate_[static_cast<std::size_t>(y)] == kFree) dmin = std::min(dmin, dist[static_cast<std::size_t>(y)] + 1);
        if (dmin >= kInf) return false;
        int maxlen = free_count();
        push_path(start);
        bool found = false;
        for (int len = dmin; len <= maxlen && !found && !exhausted_; ++len)
            found = extend_dfs(t, task, start, len, dist);
        if (!found) pop_path();
        return found;
    }

    bool extend_dfs(std::size_t t, const Task& task, int start, int len, const std::vector<int>& dist) {
        int x = path_.back();
        int depth = static_cast<int>(path_.size()) - 1;
        for (int y : hnbr_[static_cast<std::size_t>(x)]) {
            auto yi = static_cast<std::size_t>(y);
            if (hstate_[yi] != kFree || !least_unused(y)) continue;
            if (depth + 1 == len) {
                if (!compatible(task.node, y) || !target_chordless(y, start, x)) continue;
                if (!tick()) return false;
                push_path(y);
                place(task.node, y);
                route(task.link, task.from, task.node);
                if (feasible() && solve(t + 1)) return true;
                unroute(task.link, task.from, task.node);
                unplace(task.node);
                pop_path();
            } else {
                if (adjcnt_[yi] != 1 || dist[yi] > len - depth - 1) continue;
                if (!tick()) return false;
                occupy(y, kPath);
                push_path(y);
                bool ok = extend_dfs(t, task, start, len, dist);
                if (ok) return true;
                pop_path();
                release(y);
            }
            if (exhausted_) return false;
        }
        return false;
    }

    bool close(std::size_t t, const Task& task) {
        int start = pmap_[static_cast<std::size_t>(task.from)];
        int target = pmap_[static_cast<std::size_t>(task.node)];
        push_path(start);
        bool found = false;
        if (direct_available(start, target) > 0) {
            push_path(target);
            route(task.link, task.from, task.node);
            if (solve(t + 1)) found = true;
            else {
                unroute(task.link, task.from, task.node);
                pop_path();
            }
        }
        if (!found && !exhausted_) {
            auto dist = distances({target});
            // distances() seeds the target even though it is occupied; only
            // free nodes are ever expanded from it.
            int dmin = kInf;
            for (int y : hnbr_[static_cast<std::size_t>(start)])
                if (hstate_[static_cast<std::size_t>(y)] == kFree) dmin = std::min(dmin, dist[static_cast<std::size_t>(y)] + 1);
            int maxlen = free_count() + 1;
            for (int len = std::max(dmin, 2); len <= maxlen && dmin < kInf && !found && !exhausted_; ++len)
                found = close_dfs(t, task, start, target, len, dist);
        }
        if (found) return true;
        pop_path();
        return false;
    }

    bool close_dfs(std::size_t t, const Task& task, int start, int target, int len, const std::vector<int>& dist) {
        int x = path_.back();
        int depth = static_cast<int>(path_.size()) - 1;
        if (depth + 1 == len) {
            if (!adjacent(x, target) || !target_chordless(target, start, x)) return false;
            if (!tick()) return false;
            push_path(target);
            route(task.link, task.from, task.node);
            if (feasible() && solve(t + 1)) return true;
            unroute(task.link, task.from, task.node);
            pop_path();
            return false;
        }
        for (int y : hnbr_[static_cast<std::size_t>(x)]) {
            auto yi = static_cast<std::size_t>(y);
            if (hstate_[yi] != kFree || !least_unused(y) || adjcnt_[yi] != 1) continue;
            if (dist[yi] > len - depth - 1) continue;
            if (!tick()) return false;
            occupy(y, kPath);
            push_path(y);
            if (close_dfs(t, task, start, target, len, dist)) return true;
            pop_path();
            release(y);
            if (exhausted_) return false;
        }
        return false;
    }
};

}  // namespace

EmbedResult find_embedding(const LabeledGraph& pattern, const LabeledGraph& host, const PinConstraint& pins,
                           const SearchLimits& limits) {
    // The search recurses once per pattern link; densified patterns need
    // more stack than the default thread has.
    constexpr std::size_t kInlineLinks = 2000;
    if (pattern.link_count() <= kInlineLinks) {
        Search s(pattern, host, pins, limits);
        return s.run();
    }
    struct Job {
        const LabeledGraph& pattern;
        const LabeledGraph& host;
        const PinConstraint& pins;
        const SearchLimits& limits;
        std::optional<EmbedResult> result;
        std::exception_ptr error;
    } job{pattern, host, pins, limits, std::nullopt, nullptr};
    auto body = [](void* arg) -> void* {
        auto* j = static_cast<Job*>(arg);
        try {
            Search s(j->pattern, j->host, j->pins, j->limits);
            j->result = s.run();
        } catch (...) {
            j->error = std::current_exception();
        }
        return nullptr;
    };
    pthread_attr_t attr;
    pthread_attr_init(&attr);
    pthread_attr_setstacksize(&attr, (std::size_t{16} << 20) + pattern.link_count() * 1024);
    pthread_t tid;
    int rc = pthread_create(&tid, &attr, body, &job);
    pthread_attr_destroy(&attr);
    if (rc != 0) throw Error(ErrorCode::InvalidArgument, "cannot start search thread");
    pthread_join(tid, nullptr);
    if (job.error) std::rethrow_exception(job.error);
    return std::move(*job.result);
}

bool verify_embedding(const LabeledGraph& pattern, const LabeledGraph& host, const PinConstraint& pins,
                      const EmbeddingWitness& w, std::string* reason) {
    auto fail = [&](std::string msg) {
        if (reason) *reason = std::move(msg);
        return false;
    };
    const std::size_t np = pattern.node_count(), nh = host.node_count();
    if (w.node_map.size() != np) return fail("node map covers " + std::to_string(w.node_map.size()) + " of " +
                                             std::to_string(np) + " pattern nodes");
    std::vector<int> owner(nh, -1);  // pattern node whose image it is
    std::map<std::string, int> pinned_origin;
    for (std::size_t p = 0; p < np; ++p) {
        int h = w.node_map[p];
        if (h < 0 || static_cast<std::size_t>(h) >= nh) return fail("image of pattern node " + std::to_string(p) + " out of range");
        if (owner[static_cast<std::size_t>(h)] >= 0) return fail("node map not injective at host node '" + host.node(h).id + "'");
        owner[static_cast<std::size_t>(h)] = static_cast<int>(p);
        if (pins.is_pinned(static_cast<int>(p))) {
            const auto& hn = host.node(h);
            if (!hn.pin_eligible())
                return fail("pinned pattern node '" + pattern.node(static_cast<int>(p)).id + "' mapped to '" + hn.id + "'");
            if (!pinned_origin.emplace(hn.origin, static_cast<int>(p)).second)
                return fail("two pinned pattern nodes share origin '" + hn.origin + "'");
        }
    }
    if (w.paths.size() != pattern.link_count()) return fail("path count does not match link count");

    auto hmult = multiplicities(host);
    std::unordered_map<std::uint64_t, int> direct;
    std::vector<char> interior(nh, 0);
    for (std::size_t l = 0; l < w.paths.size(); ++l) {
        const auto& path = w.paths[l];
        auto [a, b] = pattern.links()[l];
        if (path.size() < 2) return fail("path of link " + std::to_string(l) + " is too short");
        if (path.front() != w.node_map[static_cast<std::size_t>(a)] || path.back() != w.node_map[static_cast<std::size_t>(b)])
            return fail("path of link " + std::to_string(l) + " does not join the images of its ends");
        for (std::size_t i = 0; i < path.size(); ++i) {
            int h = path[i];
            if (h < 0 || static_cast<std::size_t>(h) >= nh) return fail("path node out of range");
            if (i + 1 < path.size() && !hmult.count(pair_key(h, path[i + 1])))
                return fail("path of link " + std::to_string(l) + " uses a missing host link");
            if (i == 0 || i + 1 == path.size()) continue;
            auto hi = static_cast<std::size_t>(h);
            if (owner[hi] >= 0) return fail("path of link " + std::to_string(l) + " runs through the image '" + host.node(h).id + "'");
            if (interior[hi]) return fail("paths share interior host node '" + host.node(h).id + "'");
            interior[hi] = 1;
        }
        if (path.size() == 2 && ++direct[pair_key(path[0], path[1])] > hmult[pair_key(path[0], path[1])])
            return fail("parallel pattern links reuse the host link " + host.node(path[0]).id + "-" + host.node(path[1]).id);
    }
    return true;
}

}  // namespace himm
