// corpus-scope: command-line front end for the analysis pipeline.
//
// Exit codes: 0 success, 1 internal error, 2 input error, 3 empty result.

#include <cstdint>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "corpus_scope/config.hpp"
#include "corpus_scope/error.hpp"
#include "corpus_scope/pipeline.hpp"

namespace {

using namespace corpus_scope;

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitInput = 2;
constexpr int kExitEmpty = 3;

struct Flags {
  std::string config;
  std::string input;
  std::string format;
  std::string phrase;
  std::string stoplist;
  std::size_t vocab_size = 0;
  int dims = 0;
  int topics = 0;
  double alpha = 0;
  double beta = 0;
  int iters = 0;
  int burn_in = 0;
  std::uint64_t seed = 0;
  std::uint64_t bigram_threshold = 0;
  std::string country;
  std::string out;
  unsigned threads = 0;
  std::string from;

  std::vector<std::pair<std::string, CLI::Option*>> given;

  template <typename T>
  void add(CLI::App* app, const std::string& name, T& target, const std::string& help) {
    given.emplace_back(name, app->add_option(name, target, help));
  }

  bool has(const std::string& name) const {
    for (const auto& [n, opt] : given) {
      if (n == name && opt->count() > 0) return true;
    }
    return false;
  }
};

void add_common(CLI::App* app, Flags& f) {
  f.add(app, "--config", f.config, "Config file; flags override its keys");
  f.add(app, "--input", f.input, "Input records (CSV or JSON Lines)");
  f.add(app, "--format", f.format, "Input format: csv or jsonl");
  f.add(app, "--phrase", f.phrase, "Keep only records containing this phrase");
  f.add(app, "--stoplist", f.stoplist, "Stoplist file (default: $CORPUS_SCOPE_STOPLIST, then bundled)");
  f.add(app, "--vocab-size", f.vocab_size, "Vocabulary cap");
  f.add(app, "--dims", f.dims, "Correspondence analysis dimensions");
  f.add(app, "--topics", f.topics, "Number of LDA topics");
  f.add(app, "--alpha", f.alpha, "LDA document-topic prior (default 50/topics)");
  f.add(app, "--beta", f.beta, "LDA topic-word prior");
  f.add(app, "--iters", f.iters, "Gibbs sweeps");
  f.add(app, "--burn-in", f.burn_in, "Gibbs sweeps discarded before averaging");
  f.add(app, "--seed", f.seed, "Random seed");
  f.add(app, "--bigram-threshold", f.bigram_threshold, "Minimum bigram frequency for the network");
  f.add(app, "--country", f.country, "Country for the comparison subset");
  f.add(app, "--out", f.out, "Output directory");
  f.add(app, "--threads", f.threads, "Worker thread cap");
}

PipelineConfig resolve_config(const Flags& f) {
  PipelineConfig c;
  if (f.has("--config")) c = load_config(f.config);
  if (f.has("--input")) c.input = f.input;
  if (f.has("--format")) c.format = ingest::parse_format(f.format);
  if (f.has("--phrase")) c.phrase = f.phrase;
  if (f.has("--stoplist")) c.stoplist = f.stoplist;
  if (f.has("--vocab-size")) c.vocab_size = f.vocab_size;
  if (f.has("--dims")) c.dims = f.dims;
  if (f.has("--topics")) c.lda.k = f.topics;
  if (f.has("--alpha")) c.lda.alpha = f.alpha;
  if (f.has("--beta")) c.lda.beta = f.beta;
  if (f.has("--iters")) c.lda.iterations = f.iters;
  if (f.has("--burn-in")) c.burn_in = f.burn_in;
  if (f.has("--seed")) c.seed = f.seed;
  if (f.has("--bigram-threshold")) c.bigram_threshold = f.bigram_threshold;
  if (f.has("--country")) c.country = f.country;
  if (f.has("--out")) c.out = f.out;
  if (f.has("--threads")) c.threads = f.threads;
  return c;
}

int exit_code_for(const std::exception_ptr& error) {
  try {
    std::rethrow_exception(error);
  } catch (const PipelineFailure& e) {
    return exit_code_for(e.cause());
  } catch (const EmptyCorpusError&) {
    return kExitEmpty;
  } catch (const InsufficientDataError&) {
    return kExitEmpty;
  } catch (const IOError&) {
    return kExitInput;
  } catch (const SchemaError&) {
    return kExitInput;
  } catch (const ConfigError&) {
    return kExitInput;
  } catch (const NotFoundError&) {
    return kExitInput;
  } catch (...) {
    return kExitInternal;
  }
}

void print_report(const RunReport& report, const PipelineConfig& config) {
  std::cout << fmt::format("{}: {} documents, {} rejected records\n", report.command,
                           report.documents, report.rejected_records.size());
  for (const auto& name : report.outputs) {
    std::cout << "  " << (config.out / name).string() << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Scientometric analysis of bibliographic abstract collections"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(version()));

  Flags flags;
  struct Sub {
    CLI::App* app;
    std::string name;
  };
  std::vector<Sub> subs;
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"ingest", "Parse and filter records"},
      {"eda", "Yearly counts, quadratic trend, frequent terms, type shares"},
      {"lsa", "Correspondence analysis of the document-term matrix"},
      {"lda", "LDA topic model"},
      {"bigrams", "Bigram counts and thresholded network"},
      {"run", "Full pipeline"},
      {"compare", "Compare a country subset with the full corpus"},
  };
  CLI::App* run_cmd = nullptr;
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    add_common(sub, flags);
    if (name == "run") run_cmd = sub;
    subs.push_back({sub, name});
  }
  flags.add(run_cmd, "--from", flags.from, "First stage to write (earlier stages are recomputed in memory)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    const PipelineConfig config = resolve_config(flags);
    std::string command;
    for (const auto& s : subs) {
      if (s.app->parsed()) command = s.name;
    }

    RunReport report;
    if (command == "compare") {
      report = compare_subsets(config, config.country);
    } else if (command == "run") {
      RunSelection selection;
      if (flags.has("--from")) selection.from = parse_stage(flags.from);
      report = run_pipeline(config, selection);
    } else {
      RunSelection selection;
      selection.only = parse_stage(command);
      report = run_pipeline(config, selection);
    }
    print_report(report, config);
    return kExitOk;
  } catch (const std::exception& e) {
    std::cerr << "corpus-scope: " << e.what() << "\n";
    return exit_code_for(std::current_exception());
  } catch (...) {
    std::cerr << "corpus-scope: unknown error\n";
    return kExitInternal;
  }
}
