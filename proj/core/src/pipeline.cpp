#include "corpus_scope/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <set>
#include <utility>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "corpus_scope/bigrams.hpp"
#include "corpus_scope/csv.hpp"
#include "corpus_scope/dtm.hpp"
#include "corpus_scope/eda.hpp"
#include "corpus_scope/lda.hpp"
#include "corpus_scope/lsa.hpp"
#include "corpus_scope/stoplist.hpp"
#include "corpus_scope/svg.hpp"
#include "corpus_scope/vocabulary.hpp"

#ifndef CORPUS_SCOPE_VERSION
#define CORPUS_SCOPE_VERSION "0.0.0"
#endif

namespace corpus_scope {
namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;
using Json = nlohmann::ordered_json;

std::string num(double v) { return fmt::format("{:.10g}", v); }

void write_file(const fs::path& dir, std::string_view name, std::string_view content) {
  const fs::path path = dir / name;
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IOError(fmt::format("cannot write '{}'", path.string()));
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw IOError(fmt::format("failed writing '{}'", path.string()));
}

void check_input(const PipelineConfig& config) {
  if (config.input.empty()) throw ConfigError("no input file given");
  std::error_code ec;
  if (fs::is_directory(config.input, ec)) {
    throw IOError(fmt::format("input '{}' is a directory", config.input.string()));
  }
  std::ifstream probe(config.input, std::ios::binary);
  if (!probe) throw IOError(fmt::format("cannot read input '{}'", config.input.string()));
}

void prepare_output(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw IOError(fmt::format("cannot create output directory '{}'", dir.string()));
  }
}

Json config_json(const std::string& echo) {
  Json out = Json::object();
  std::string section;
  std::string_view rest = echo;
  while (!rest.empty()) {
    const auto nl = rest.find('\n');
    std::string_view line = rest.substr(0, nl);
    rest = nl == std::string_view::npos ? std::string_view{} : rest.substr(nl + 1);
    if (line.empty()) continue;
    if (line.front() == '[') {
      section = std::string(line.substr(1, line.size() - 2));
      out[section] = Json::object();
      continue;
    }
    const auto eq = line.find(" = ");
    if (eq == std::string_view::npos) continue;
    out[section][std::string(line.substr(0, eq))] = std::string(line.substr(eq + 3));
  }
  return out;
}

std::string report_json(const RunReport& r) {
  Json j;
  j["command"] = r.command;
  j["version"] = r.version;
  j["status"] = r.succeeded ? "ok" : "failed";
  if (!r.succeeded) {
    j["failed_stage"] = r.failed_stage;
    j["error"] = r.error;
  }
  j["provenance"] = r.provenance;
  j["documents"] = r.documents;
  Json rejected = Json::array();
  for (const auto& e : r.rejected_records) rejected.push_back({{"row", e.row}, {"reason", e.reason}});
  j["rejected_records"] = rejected;
  Json dropped = Json::object();
  for (const auto& [name, ids] : r.dropped) dropped[name] = ids;
  j["dropped"] = dropped;
  j["outputs"] = r.outputs;
  j["config"] = config_json(r.config_echo);
  return j.dump(2) + "\n";
}

std::string timings_json(const RunReport& r, const PipelineConfig& config) {
  Json j;
  j["threads"] = config.threads;
  j["output_directory"] = config.out.string();
  Json stages = Json::array();
  double total = 0;
  for (const auto& t : r.timings) {
    stages.push_back({{"stage", t.stage}, {"seconds", t.seconds}});
    total += t.seconds;
  }
  j["stages"] = stages;
  j["total_seconds"] = total;
  return j.dump(2) + "\n";
}

// Shared state handed from stage to stage.
struct Context {
  const PipelineConfig& config;
  RunReport& report;
  bool write = false;
  std::vector<std::string> written;

  Corpus corpus;
  std::vector<text::TokenSequence> sequences;
  text::Vocabulary vocab;
  text::SparseDTM dtm;

  void emit(std::string_view name, std::string_view content) {
    if (!write) return;
    write_file(config.out, name, content);
    written.emplace_back(name);
  }
};

Corpus load_corpus(const PipelineConfig& config, RunReport& report) {
  auto parsed = ingest::load_records(config.input, config.format);
  report.rejected_records = parsed.errors;
  Corpus corpus = config.phrase.empty() ? std::move(parsed.corpus)
                                        : ingest::filter_by_phrase(parsed.corpus, config.phrase);
  if (corpus.empty()) {
    throw EmptyCorpusError(config.phrase.empty()
                               ? std::string("no valid records in the input")
                               : fmt::format("no record matches the phrase '{}'", config.phrase));
  }
  return corpus;
}

void run_ingest(Context& ctx) {
  ctx.corpus = load_corpus(ctx.config, ctx.report);
  ctx.report.provenance = ctx.corpus.provenance();
  ctx.report.documents = ctx.corpus.size();
  ctx.report.dropped["missing_year"] = ctx.corpus.missing_year_ids();

  ctx.emit("corpus.csv", ingest::to_csv(ctx.corpus));
  std::string rejected = "row,reason\n";
  for (const auto& e : ctx.report.rejected_records) {
    const std::string row = std::to_string(e.row);
    csv::append_row(rejected, {row, e.reason});
  }
  ctx.emit("rejected_records.csv", rejected);
}

void run_text(Context& ctx) {
  const auto stoplist = text::resolve_stoplist(ctx.config.stoplist);
  ctx.sequences = text::build_sequences(ctx.corpus, stoplist, {}, ctx.config.threads);
  ctx.vocab = text::build_vocabulary(ctx.sequences, ctx.config.vocab_size);
  ctx.dtm = text::build_dtm(ctx.sequences, ctx.vocab);

  std::string vocab = "rank,term,frequency\n";
  for (std::size_t i = 0; i < ctx.vocab.size(); ++i) {
    const std::string rank = std::to_string(i + 1);
    const std::string freq = std::to_string(ctx.vocab.frequencies()[i]);
    csv::append_row(vocab, {rank, ctx.vocab.terms()[i], freq});
  }
  ctx.emit("vocabulary.csv", vocab);

  std::string mm = text::to_matrix_market(ctx.dtm);
  const auto first_nl = mm.find('\n');
  mm.insert(first_nl + 1, fmt::format("% provenance: {}\n", ctx.report.provenance));
  ctx.emit("dtm.mtx", mm);
  ctx.emit("dtm_index.csv", text::to_index_csv(ctx.dtm));
}

void run_eda(Context& ctx) {
  const auto& config = ctx.config;
  const auto counts = eda::counts_per_year(ctx.corpus);

  std::string years = "year,count\n";
  for (const auto& p : counts.series.points()) years += fmt::format("{},{}\n", p.year, p.count);
  ctx.emit("year_counts.csv", years);

  std::vector<svg::Series> chart;
  svg::Series observed{"publications", "#1f77b4", {}, true, true};
  for (const auto& p : counts.series.points()) {
    observed.points.emplace_back(p.year, static_cast<double>(p.count));
  }
  chart.push_back(observed);

  std::string trend = "quantity,value\n";
  try {
    const auto fit = eda::fit_quadratic(counts.series);
    trend += "status,ok\n";
    trend += fmt::format("a2,{}\na1,{}\na0,{}\n", num(fit.a2), num(fit.a1), num(fit.a0));
    trend += fmt::format("c2,{}\nc1,{}\nc0,{}\nx_center,{}\n", num(fit.c2), num(fit.c1),
                         num(fit.c0), num(fit.x_center));
    trend += fmt::format("r_squared,{}\nf_statistic,{}\np_value,{}\n", num(fit.r_squared),
                         num(fit.f_statistic), num(fit.p_value));
    trend += fmt::format("degenerate,{}\nn_points,{}\nfirst_year,{}\nlast_year,{}\n",
                         fit.degenerate ? "true" : "false", fit.n_points, fit.first_year,
                         fit.last_year);

    svg::Series curve{"quadratic fit", "#ff7f0e", {}, true, false};
    for (int y = fit.first_year; y <= fit.last_year + config.forecast_years; ++y) {
      curve.points.emplace_back(y, fit.evaluate(y));
    }
    svg::Series predicted{"forecast", "#2ca02c", {}, false, true};
    for (int i = 1; i <= config.forecast_years; ++i) {
      const auto f = eda::forecast(fit, fit.last_year + i);
      trend += fmt::format("forecast_{},{}\n", f.year, num(f.value));
      if (f.clamped) trend += fmt::format("forecast_{}_clamped,true\n", f.year);
      predicted.points.emplace_back(f.year, f.value);
    }
    chart.push_back(curve);
    if (!predicted.points.empty()) chart.push_back(predicted);
  } catch (const InsufficientDataError& e) {
    trend += "status,insufficient_data\n";
    csv::append_row(trend, {"message", e.what()});
  } catch (const DegenerateDesignError& e) {
    trend += "status,degenerate_design\n";
    csv::append_row(trend, {"message", e.what()});
  }
  ctx.emit("trend.csv", trend);

  std::string top = "rank,term,frequency,cumulative_share\n";
  const auto terms = eda::top_terms(ctx.dtm, ctx.vocab, config.top_terms);
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const std::string rank = std::to_string(i + 1);
    const std::string freq = std::to_string(terms[i].frequency);
    const std::string share = num(terms[i].cumulative_share);
    csv::append_row(top, {rank, terms[i].term, freq, share});
  }
  ctx.emit("top_terms.csv", top);

  std::string types = "type,count,exact_percent,percent\n";
  for (const auto& s : eda::type_shares(ctx.corpus)) {
    types += fmt::format("{},{},{},{}\n", csv::escape(std::string(to_string(s.type))), s.count,
                         num(s.exact_percent), s.percent);
  }
  ctx.emit("type_shares.csv", types);

  ctx.emit("trend.svg", svg::line_chart("Publications per year", "year", "documents", chart));
}

void run_lsa(Context& ctx) {
  const auto& config = ctx.config;
  lsa::CaOptions options;
  options.threads = config.threads;
  options.lanczos.seed = config.seed;
  const auto model = lsa::fit_ca(ctx.dtm, config.dims, options);
  ctx.report.dropped["ca_documents"] = model.dropped_rows;
  ctx.report.dropped["ca_terms"] = model.dropped_cols;
  const int d = model.retained_dims;

  std::string dim_header;
  for (int k = 1; k <= d; ++k) dim_header += fmt::format(",dim{}", k);

  const auto explained = model.explained_inertia();
  std::string summary = "dimension,singular_value,principal_inertia,explained_share\n";
  for (int k = 0; k < d; ++k) {
    const double sv = model.singular_values(k);
    summary += fmt::format("{},{},{},{}\n", k + 1, num(sv), num(sv * sv), num(explained(k)));
  }
  summary += fmt::format("total,,{},\n", num(model.total_inertia));
  ctx.emit("ca_summary.csv", summary);

  auto coords_table = [&](std::string_view label, const std::vector<std::string>& names,
                          const Eigen::VectorXd& masses, const Eigen::MatrixXd& coords) {
    std::string out = fmt::format("{},mass{}\n", label, dim_header);
    for (std::size_t i = 0; i < names.size(); ++i) {
      out += csv::escape(names[i]) + "," + num(masses(static_cast<Eigen::Index>(i)));
      for (int k = 0; k < d; ++k) out += "," + num(coords(static_cast<Eigen::Index>(i), k));
      out += "\n";
    }
    return out;
  };
  ctx.emit("ca_rows.csv", coords_table("doc_id", model.row_ids, model.row_masses, model.row_coords));
  ctx.emit("ca_columns.csv",
           coords_table("term", model.col_terms, model.col_masses, model.col_coords));

  // Document types and years as supplementary points.
  std::map<std::string, std::vector<std::string>> groups;
  for (const auto& id : model.row_ids) {
    const Document* doc = ctx.corpus.find(id);
    if (doc == nullptr) continue;
    groups[fmt::format("type:{}", to_string(doc->doc_type))].push_back(id);
    if (doc->year) groups[fmt::format("year:{}", *doc->year)].push_back(id);
  }
  const auto supp = lsa::project_supplementary(model, groups);
  std::string supp_csv = fmt::format("label,mass{}\n", dim_header);
  for (std::size_t i = 0; i < supp.labels.size(); ++i) {
    supp_csv += csv::escape(supp.labels[i]) + "," + num(supp.masses[i]);
    for (int k = 0; k < d; ++k) supp_csv += "," + num(supp.coords(static_cast<Eigen::Index>(i), k));
    supp_csv += "\n";
  }
  ctx.emit("ca_supplementary.csv", supp_csv);

  const auto ranked = lsa::representative_documents(model, model.row_ids.size());
  std::string reps = "rank,doc_id,score,title\n";
  for (std::size_t i = 0; i < ranked.size(); ++i) {
    const Document* doc = ctx.corpus.find(ranked[i].doc_id);
    const std::string rank = std::to_string(i + 1);
    const std::string score = num(ranked[i].score);
    csv::append_row(reps, {rank, ranked[i].doc_id, score, doc ? doc->title : std::string()});
  }
  ctx.emit("ca_representatives.csv", reps);

  // Map: documents in grey, terms in red; only the leading few carry labels.
  std::set<std::string> labelled_docs;
  for (std::size_t i = 0; i < ranked.size() && i < config.labels; ++i) {
    labelled_docs.insert(ranked[i].doc_id);
  }
  std::vector<std::pair<double, std::size_t>> term_weight;
  for (std::size_t j = 0; j < model.col_terms.size(); ++j) {
    const auto jj = static_cast<Eigen::Index>(j);
    term_weight.emplace_back(model.col_masses(jj) * model.col_coords.row(jj).squaredNorm(), j);
  }
  std::stable_sort(term_weight.begin(), term_weight.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  std::set<std::size_t> labelled_terms;
  for (std::size_t i = 0; i < term_weight.size() && i < config.labels; ++i) {
    labelled_terms.insert(term_weight[i].second);
  }

  auto y_of = [&](const Eigen::MatrixXd& m, Eigen::Index i) { return d >= 2 ? m(i, 1) : 0.0; };
  std::vector<svg::ScatterPoint> points;
  for (std::size_t i = 0; i < model.row_ids.size(); ++i) {
    const auto ii = static_cast<Eigen::Index>(i);
    points.push_back({model.row_coords(ii, 0), y_of(model.row_coords, ii), model.row_ids[i],
                      labelled_docs.count(model.row_ids[i]) > 0, "#7f7f7f"});
  }
  for (std::size_t j = 0; j < model.col_terms.size(); ++j) {
    const auto jj = static_cast<Eigen::Index>(j);
    points.push_back({model.col_coords(jj, 0), y_of(model.col_coords, jj), model.col_terms[j],
                      labelled_terms.count(j) > 0, "#d62728"});
  }
  ctx.emit("ca_map.svg",
           svg::scatter_plot("Correspondence analysis map", "dimension 1", "dimension 2", points));
}

void run_lda(Context& ctx) {
  const auto& config = ctx.config;
  const auto lda_config = config.lda_config();
  lda::LdaModel model;
  if (config.chains == 1) {
    model = lda::fit_lda(ctx.sequences, ctx.vocab, lda_config);
  } else {
    std::vector<std::uint64_t> seeds;
    for (int c = 0; c < config.chains; ++c) seeds.push_back(config.seed + static_cast<std::uint64_t>(c));
    model = lda::fit_lda_chains(ctx.sequences, ctx.vocab, lda_config, seeds, config.threads);
  }
  ctx.report.dropped["lda_documents"] = model.dropped_docs;

  ctx.emit("lda_model.txt", lda::save_model(model));

  std::string words = "topic,rank,term,weight\n";
  const auto top = lda::top_words_per_topic(model, config.top_words);
  for (std::size_t t = 0; t < top.size(); ++t) {
    for (std::size_t r = 0; r < top[t].size(); ++r) {
      const std::string topic = std::to_string(t + 1);
      const std::string rank = std::to_string(r + 1);
      const std::string weight = num(top[t][r].weight);
      csv::append_row(words, {topic, rank, top[t][r].term, weight});
    }
  }
  ctx.emit("lda_top_words.csv", words);

  std::string docs = "doc_id";
  for (int t = 1; t <= model.topics(); ++t) docs += fmt::format(",topic{}", t);
  docs += "\n";
  for (std::size_t i = 0; i < model.doc_ids.size(); ++i) {
    docs += csv::escape(model.doc_ids[i]);
    for (int t = 0; t < model.topics(); ++t) {
      docs += "," + num(model.theta(static_cast<Eigen::Index>(i), t));
    }
    docs += "\n";
  }
  ctx.emit("lda_doc_topics.csv", docs);

  std::string ll = "sweep,log_likelihood\n";
  for (std::size_t s = 0; s < model.log_likelihood.size(); ++s) {
    ll += fmt::format("{},{}\n", s + 1, num(model.log_likelihood[s]));
  }
  ctx.emit("lda_loglik.csv", ll);
}

void run_bigrams(Context& ctx) {
  const auto table = bigrams::count_bigrams(ctx.sequences, ctx.config.threads);
  const auto graph = bigrams::threshold_graph(table, ctx.config.bigram_threshold);
  ctx.emit("bigrams.csv", bigrams::table_to_csv(table));
  ctx.emit("bigram_graph.dot", bigrams::export_graph(graph, bigrams::GraphFormat::DOT));
  ctx.emit("bigram_graph.graphml", bigrams::export_graph(graph, bigrams::GraphFormat::GraphML));
  ctx.emit("bigram_edges.csv", bigrams::export_graph(graph, bigrams::GraphFormat::EdgeCSV));
}

using StageFn = void (*)(Context&);

StageFn stage_function(Stage s) {
  switch (s) {
    case Stage::Ingest: return run_ingest;
    case Stage::Text: return run_text;
    case Stage::Eda: return run_eda;
    case Stage::Lsa: return run_lsa;
    case Stage::Lda: return run_lda;
    case Stage::Bigrams: return run_bigrams;
  }
  return nullptr;
}

[[noreturn]] void fail(RunReport& report, const PipelineConfig& config, std::string_view stage) {
  const auto cause = std::current_exception();
  report.succeeded = false;
  report.failed_stage = std::string(stage);
  try {
    std::rethrow_exception(cause);
  } catch (const std::exception& e) {
    report.error = e.what();
  } catch (...) {
    report.error = "unknown error";
  }
  try {
    write_file(config.out, kReportFile, report_json(report));
    write_file(config.out, kTimingsFile, timings_json(report, config));
  } catch (const Error&) {
    // The original failure is what matters to the caller.
  }
  throw PipelineFailure(report, cause);
}

// Statistics for one side of a comparison.
struct SideSummary {
  std::size_t documents = 0;
  std::map<int, std::uint64_t> years;
  std::size_t missing_year = 0;
  std::map<DocType, std::pair<std::uint64_t, int>> types;
  std::vector<eda::TermFrequency> terms;
  std::vector<std::string> topics;
};

SideSummary summarize(const Corpus& corpus, const PipelineConfig& config,
                      const text::Stoplist& stoplist) {
  SideSummary s;
  s.documents = corpus.size();
  for (const auto& d : corpus.documents()) {
    if (d.year) {
      ++s.years[*d.year];
    } else {
      ++s.missing_year;
    }
  }
  for (const auto& t : eda::type_shares(corpus)) s.types[t.type] = {t.count, t.percent};

  const auto seqs = text::build_sequences(corpus, stoplist, {}, config.threads);
  const auto vocab = text::build_vocabulary(seqs, config.vocab_size);
  const auto dtm = text::build_dtm(seqs, vocab);
  s.terms = eda::top_terms(dtm, vocab, config.top_terms);

  const auto model = lda::fit_lda(seqs, vocab, config.lda_config());
  for (const auto& topic : lda::top_words_per_topic(model, config.top_words)) {
    std::string joined;
    for (const auto& w : topic) {
      if (!joined.empty()) joined.push_back(' ');
      joined += w.term;
    }
    s.topics.push_back(joined);
  }
  return s;
}

}  // namespace

std::string_view version() { return CORPUS_SCOPE_VERSION; }

const std::vector<std::string>& stage_outputs(Stage stage) {
  static const std::map<Stage, std::vector<std::string>> files = {
      {Stage::Ingest, {"corpus.csv", "rejected_records.csv"}},
      {Stage::Text, {"vocabulary.csv", "dtm.mtx", "dtm_index.csv"}},
      {Stage::Eda, {"year_counts.csv", "trend.csv", "top_terms.csv", "type_shares.csv", "trend.svg"}},
      {Stage::Lsa,
       {"ca_summary.csv", "ca_rows.csv", "ca_columns.csv", "ca_supplementary.csv",
        "ca_representatives.csv", "ca_map.svg"}},
      {Stage::Lda, {"lda_model.txt", "lda_top_words.csv", "lda_doc_topics.csv", "lda_loglik.csv"}},
      {Stage::Bigrams,
       {"bigrams.csv", "bigram_graph.dot", "bigram_graph.graphml", "bigram_edges.csv"}},
  };
  return files.at(stage);
}

PipelineFailure::PipelineFailure(RunReport report, std::exception_ptr cause)
    : Error(fmt::format("stage '{}' failed: {}", report.failed_stage, report.error)),
      report_(std::move(report)),
      cause_(std::move(cause)) {}

RunReport run_pipeline(const PipelineConfig& config, const RunSelection& selection) {
  config.validate();
  check_input(config);

  RunReport report;
  report.command = selection.only ? std::string(to_string(*selection.only)) : "run";
  report.version = std::string(version());
  report.config_echo = config_echo(config);

  auto executes = [&](Stage s) {
    if (s == Stage::Ingest) return true;
    if (selection.only) return s == Stage::Text ? *selection.only != Stage::Ingest : s == *selection.only;
    return s == Stage::Text || s >= selection.from;
  };
  auto writes = [&](Stage s) {
    return selection.only ? s == *selection.only : s >= selection.from;
  };

  prepare_output(config.out);
  Context ctx{config, report, false, {}, {}, {}, {}, {}};
  for (Stage s : kAllStages) {
    if (!executes(s)) continue;
    ctx.write = writes(s);
    const auto start = Clock::now();
    try {
      stage_function(s)(ctx);
    } catch (...) {
      report.outputs = ctx.written;
      fail(report, config, to_string(s));
    }
    report.timings.push_back(
        {std::string(to_string(s)), std::chrono::duration<double>(Clock::now() - start).count()});
  }

  // Outputs of earlier stages kept from a previous run stay listed.
  if (!selection.only) {
    for (Stage s : kAllStages) {
      if (s >= selection.from) break;
      for (const auto& name : stage_outputs(s)) {
        if (fs::exists(config.out / name)) report.outputs.push_back(name);
      }
    }
  }
  for (const auto& name : ctx.written) report.outputs.push_back(name);
  for (const auto& name : report.outputs) {
    if (!fs::exists(config.out / name)) {
      throw Error(fmt::format("listed output '{}' is missing", name));
    }
  }

  report.succeeded = true;
  write_file(config.out, kReportFile, report_json(report));
  write_file(config.out, kTimingsFile, timings_json(report, config));
  return report;
}

RunReport compare_subsets(const PipelineConfig& config, const std::string& country) {
  config.validate();
  if (country.empty()) throw ConfigError("compare needs a country");
  check_input(config);

  RunReport report;
  report.command = "compare";
  report.version = std::string(version());
  PipelineConfig echoed = config;
  echoed.country = country;
  report.config_echo = config_echo(echoed);

  const auto start = Clock::now();
  const Corpus full = load_corpus(config, report);
  report.provenance = full.provenance();
  report.documents = full.size();
  auto [subset, rest] = ingest::partition_by_country(full, country);
  if (subset.empty()) {
    throw EmptyCorpusError(fmt::format("no document is affiliated with '{}'", country));
  }

  const auto stoplist = text::resolve_stoplist(config.stoplist);
  const SideSummary overall = summarize(full, config, stoplist);
  const SideSummary part = summarize(subset, config, stoplist);

  std::string out = "section,key,overall,subset\n";
  auto row = [&](std::string_view section, const std::string& key, const std::string& a,
                 const std::string& b) {
    csv::append_row(out, {std::string(section), key, a, b});
  };
  const double n = static_cast<double>(overall.documents);
  row("documents", "count", std::to_string(overall.documents), std::to_string(part.documents));
  row("documents", "share", fmt::format("{:.6f}", 1.0),
      fmt::format("{:.6f}", static_cast<double>(part.documents) / n));
  row("documents", "share_percent", fmt::format("{:.1f}", 100.0),
      fmt::format("{:.1f}", 100.0 * static_cast<double>(part.documents) / n));

  std::set<int> years;
  for (const auto& [y, c] : overall.years) years.insert(y);
  for (const auto& [y, c] : part.years) years.insert(y);
  auto year_count = [](const SideSummary& s, int y) {
    const auto it = s.years.find(y);
    return it == s.years.end() ? std::uint64_t{0} : it->second;
  };
  for (int y : years) {
    row("year_count", std::to_string(y), std::to_string(year_count(overall, y)),
        std::to_string(year_count(part, y)));
  }
  row("year_count", "missing", std::to_string(overall.missing_year), std::to_string(part.missing_year));

  for (DocType t : kAllDocTypes) {
    const auto a = overall.types.find(t);
    const auto b = part.types.find(t);
    if (a == overall.types.end() && b == part.types.end()) continue;
    const auto count_of = [](auto it, auto end) { return it == end ? std::uint64_t{0} : it->second.first; };
    const auto pct_of = [](auto it, auto end) { return it == end ? 0 : it->second.second; };
    const std::string key(to_string(t));
    row("type_count", key, std::to_string(count_of(a, overall.types.end())),
        std::to_string(count_of(b, part.types.end())));
    row("type_percent", key, std::to_string(pct_of(a, overall.types.end())),
        std::to_string(pct_of(b, part.types.end())));
  }

  auto term_cell = [](const SideSummary& s, std::size_t i) {
    return i < s.terms.size() ? fmt::format("{} ({})", s.terms[i].term, s.terms[i].frequency)
                              : std::string();
  };
  const std::size_t term_rows = std::max(overall.terms.size(), part.terms.size());
  for (std::size_t i = 0; i < term_rows; ++i) {
    row("top_term", std::to_string(i + 1), term_cell(overall, i), term_cell(part, i));
  }

  const std::size_t topic_rows = std::max(overall.topics.size(), part.topics.size());
  for (std::size_t t = 0; t < topic_rows; ++t) {
    row("lda_topic", std::to_string(t + 1), t < overall.topics.size() ? overall.topics[t] : "",
        t < part.topics.size() ? part.topics[t] : "");
  }

  prepare_output(config.out);
  write_file(config.out, kCompareFile, out);
  report.outputs.emplace_back(kCompareFile);
  report.timings.push_back({"compare", std::chrono::duration<double>(Clock::now() - start).count()});
  report.succeeded = true;
  write_file(config.out, kReportFile, report_json(report));
  write_file(config.out, kTimingsFile, timings_json(report, config));
  return report;
}

}  // namespace corpus_scope
