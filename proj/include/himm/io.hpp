#pragma once

#include <filesystem>
#include <string>

#include "himm/embedding.hpp"
#include "himm/engine.hpp"
#include "himm/hypergraph.hpp"
#include "himm/labeled_graph.hpp"

namespace himm {

// All writers produce compact JSON with a trailing newline and keys in a
// fixed order, so output is byte-stable. Readers throw Error(ParseError) on
// malformed input and the usual hypergraph errors on invalid content.

Hypergraph parse_hypergraph(const std::string& text);
std::string hypergraph_json(const Hypergraph& g);

ImmersionWitness parse_witness(const std::string& text);
std::string witness_json(const ImmersionWitness& w);

DualWitness parse_dual_witness(const std::string& text);
std::string dual_witness_json(const DualWitness& w);

std::string decision_json(const Decision& d);

std::string labeled_graph_json(const LabeledGraph& g);

/// Paths are given by node ids; `link` is [id_a, id_b, k] with k counting
/// earlier parallel copies of the same link.
std::string embedding_witness_json(const LabeledGraph& pattern, const LabeledGraph& host, const EmbeddingWitness& w);

std::string read_file(const std::filesystem::path& p);  // throws ParseError when unreadable
void write_file(const std::filesystem::path& p, const std::string& content);

}  // namespace himm
