#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "corpus_scope/vocabulary.hpp"

namespace corpus_scope::bigrams {

using Bigram = std::pair<std::string, std::string>;

struct BigramTable {
  std::map<Bigram, std::uint64_t> pairs;  // ordered (first, second) -> frequency
  std::uint64_t total = 0;

  friend bool operator==(const BigramTable&, const BigramTable&) = default;
};

/// Counts ordered adjacent pairs inside each sequence; pairs never span two
/// documents. Sequences are expected to be stopword-filtered already.
BigramTable count_bigrams(const std::vector<text::TokenSequence>& sequences, unsigned threads = 1);

inline constexpr std::uint64_t kDefaultThreshold = 150;

struct Edge {
  std::string from;
  std::string to;
  std::uint64_t weight = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

struct BigramGraph {
  std::vector<std::string> nodes;  // sorted, endpoints of edges only
  std::vector<Edge> edges;         // sorted by (from, to)
  std::uint64_t threshold = 1;
  bool directed = true;

  friend bool operator==(const BigramGraph&, const BigramGraph&) = default;
};

/// Keeps pairs with frequency >= min_freq. Throws ConfigError when min_freq == 0.
BigramGraph threshold_graph(const BigramTable& table, std::uint64_t min_freq = kDefaultThreshold);

/// Folds (a, b) and (b, a) into one undirected edge keyed by the sorted pair,
/// summing weights. For drawing only; analysis keeps direction.
BigramGraph merge_undirected(const BigramGraph& graph);

enum class GraphFormat { DOT, GraphML, EdgeCSV };

/// Accepts "dot", "graphml" and "csv"/"edgecsv"; throws ConfigError otherwise.
GraphFormat parse_graph_format(std::string_view name);

std::string export_graph(const BigramGraph& graph, GraphFormat format);

/// Reads the EdgeCSV form ("source,target,weight"). Throws SchemaError on
/// malformed rows or an edge lighter than `threshold`.
BigramGraph parse_edge_csv(std::string_view text, std::uint64_t threshold, bool directed = true);

/// Full table as CSV (first,second,frequency), descending frequency then
/// lexicographic.
std::string table_to_csv(const BigramTable& table);

}  // namespace corpus_scope::bigrams
