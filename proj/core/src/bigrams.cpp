#include "corpus_scope/bigrams.hpp"

#include <algorithm>
#include <charconv>
#include <set>

#include <fmt/format.h>

#include "corpus_scope/csv.hpp"
#include "corpus_scope/document.hpp"
#include "corpus_scope/error.hpp"
#include "corpus_scope/parallel.hpp"

namespace corpus_scope::bigrams {
namespace {

BigramGraph assemble(std::map<Bigram, std::uint64_t> edges, std::uint64_t threshold, bool directed) {
  BigramGraph g;
  g.threshold = threshold;
  g.directed = directed;
  std::set<std::string> nodes;
  for (auto& [pair, w] : edges) {
    nodes.insert(pair.first);
    nodes.insert(pair.second);
    g.edges.push_back({pair.first, pair.second, w});
  }
  g.nodes.assign(nodes.begin(), nodes.end());
  return g;
}

std::string dot_id(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string xml_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

}  // namespace

BigramTable count_bigrams(const std::vector<text::TokenSequence>& sequences, unsigned threads) {
  const std::size_t workers = std::max(1u, threads);
  std::vector<std::map<Bigram, std::uint64_t>> partial(workers);
  // One partial map per fixed chunk; the merge is a commutative sum so the
  // result does not depend on the worker count.
  parallel_chunks(workers, static_cast<unsigned>(workers), [&](std::size_t wb, std::size_t we) {
    for (std::size_t w = wb; w < we; ++w) {
      const std::size_t begin = sequences.size() * w / workers;
      const std::size_t end = sequences.size() * (w + 1) / workers;
      for (std::size_t d = begin; d < end; ++d) {
        const auto& toks = sequences[d].tokens;
        for (std::size_t i = 1; i < toks.size(); ++i) ++partial[w][{toks[i - 1], toks[i]}];
      }
    }
  });
  BigramTable table;
  for (auto& part : partial) {
    for (auto& [pair, n] : part) {
      table.pairs[pair] += n;
      table.total += n;
    }
  }
  return table;
}

BigramGraph threshold_graph(const BigramTable& table, std::uint64_t min_freq) {
  if (min_freq == 0) throw ConfigError("bigram threshold must be at least 1");
  std::map<Bigram, std::uint64_t> kept;
  for (const auto& [pair, n] : table.pairs) {
    if (n >= min_freq) kept.emplace(pair, n);
  }
  return assemble(std::move(kept), min_freq, true);
}

BigramGraph merge_undirected(const BigramGraph& graph) {
  std::map<Bigram, std::uint64_t> merged;
  for (const auto& e : graph.edges) {
    Bigram key = e.from <= e.to ? Bigram{e.from, e.to} : Bigram{e.to, e.from};
    merged[key] += e.weight;
  }
  return assemble(std::move(merged), graph.threshold, false);
}

GraphFormat parse_graph_format(std::string_view name) {
  const auto key = ascii_lower(name);
  if (key == "dot") return GraphFormat::DOT;
  if (key == "graphml") return GraphFormat::GraphML;
  if (key == "csv" || key == "edgecsv") return GraphFormat::EdgeCSV;
  throw ConfigError(fmt::format("unknown graph format '{}'", name));
}

std::string export_graph(const BigramGraph& graph, GraphFormat format) {
  std::string out;
  switch (format) {
    case GraphFormat::DOT: {
      const char* arrow = graph.directed ? " -> " : " -- ";
      out += graph.directed ? "digraph bigrams {\n" : "graph bigrams {\n";
      out += fmt::format("  // threshold={}\n", graph.threshold);
      for (const auto& n : graph.nodes) out += fmt::format("  {};\n", dot_id(n));
      for (const auto& e : graph.edges) {
        out += fmt::format("  {}{}{} [weight={}];\n", dot_id(e.from), arrow, dot_id(e.to), e.weight);
      }
      out += "}\n";
      break;
    }
    case GraphFormat::GraphML: {
      out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
      out += "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n";
      out += "  <key id=\"weight\" for=\"edge\" attr.name=\"weight\" attr.type=\"long\"/>\n";
      out += fmt::format("  <graph id=\"bigrams\" edgedefault=\"{}\">\n",
                         graph.directed ? "directed" : "undirected");
      for (const auto& n : graph.nodes) out += fmt::format("    <node id=\"{}\"/>\n", xml_escape(n));
      for (const auto& e : graph.edges) {
        out += fmt::format(
            "    <edge source=\"{}\" target=\"{}\"><data key=\"weight\">{}</data></edge>\n",
            xml_escape(e.from), xml_escape(e.to), e.weight);
      }
      out += "  </graph>\n</graphml>\n";
      break;
    }
    case GraphFormat::EdgeCSV: {
      out += "source,target,weight\n";
      for (const auto& e : graph.edges) {
        const std::string w = fmt::format("{}", e.weight);
        csv::append_row(out, {e.from, e.to, w});
      }
      break;
    }
  }
  return out;
}

BigramGraph parse_edge_csv(std::string_view text, std::uint64_t threshold, bool directed) {
  auto records = csv::parse(text);
  if (records.empty() || records.front().fields !=
                             std::vector<std::string>{"source", "target", "weight"}) {
    throw SchemaError("edge CSV must start with the header source,target,weight");
  }
  std::map<Bigram, std::uint64_t> edges;
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& f = records[r].fields;
    if (f.size() != 3 || records[r].unterminated_quote) {
      throw SchemaError(fmt::format("edge CSV row {} is malformed", r));
    }
    std::uint64_t w = 0;
    auto [ptr, ec] = std::from_chars(f[2].data(), f[2].data() + f[2].size(), w);
    if (ec != std::errc{} || ptr != f[2].data() + f[2].size()) {
      throw SchemaError(fmt::format("edge CSV row {} has a bad weight", r));
    }
    if (w < threshold) throw SchemaError(fmt::format("edge CSV row {} is below the threshold", r));
    if (!edges.emplace(Bigram{f[0], f[1]}, w).second) {
      throw SchemaError(fmt::format("edge CSV row {} repeats an edge", r));
    }
  }
  return assemble(std::move(edges), threshold, directed);
}

std::string table_to_csv(const BigramTable& table) {
  std::vector<std::pair<Bigram, std::uint64_t>> rows(table.pairs.begin(), table.pairs.end());
  std::stable_sort(rows.begin(), rows.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  std::string out = "first,second,frequency\n";
  for (const auto& [pair, n] : rows) {
    const std::string count = fmt::format("{}", n);
    csv::append_row(out, {pair.first, pair.second, count});
  }
  return out;
}

}  // namespace corpus_scope::bigrams
