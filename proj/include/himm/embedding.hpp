#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "himm/labeled_graph.hpp"

namespace himm {

/// Per pattern node: a pinned node must land on a pin-eligible host node
/// (vertex node with duplicate index 1), and pinned nodes must land on
/// distinct origins.
struct PinConstraint {
    std::vector<char> pinned;

    static PinConstraint none(std::size_t pattern_nodes) { return {std::vector<char>(pattern_nodes, 0)}; }
    /// Pins exactly the nodes flagged `pinned` in the pattern.
    static PinConstraint from_marks(const LabeledGraph& pattern);
    bool is_pinned(int p) const { return static_cast<std::size_t>(p) < pinned.size() && pinned[static_cast<std::size_t>(p)]; }
};

struct EmbeddingWitness {
    std::vector<int> node_map;            // pattern node -> host node
    std::vector<std::vector<int>> paths;  // per pattern link, host nodes from image(a) to image(b)
};

struct SearchLimits {
    std::uint64_t max_expansions = 0;  // 0 = unlimited
    std::optional<std::chrono::steady_clock::time_point> deadline;
    const std::atomic<bool>* cancel = nullptr;  // polled together with the deadline
};

enum class EmbedStatus { Found, NotFound, BudgetExhausted };

struct EmbedResult {
    EmbedStatus status = EmbedStatus::NotFound;
    std::optional<EmbeddingWitness> witness;
    std::uint64_t expansions = 0;
};

std::string_view to_string(EmbedStatus s);

/// Exact backtracking search for a topological embedding of `pattern` in
/// `host`: an injective node map plus internally disjoint host paths, one
/// per pattern link (parallel links get distinct paths). Exhausting the
/// limits yields BudgetExhausted, never a guess.
EmbedResult find_embedding(const LabeledGraph& pattern, const LabeledGraph& host, const PinConstraint& pins,
                           const SearchLimits& limits = {});

/// Pure check of a witness against the embedding definition and the pins.
/// On failure `reason` (when given) receives a short description.
bool verify_embedding(const LabeledGraph& pattern, const LabeledGraph& host, const PinConstraint& pins,
                      const EmbeddingWitness& w, std::string* reason = nullptr);

}  // namespace himm
