#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "corpus_scope/bigrams.hpp"
#include "corpus_scope/eda.hpp"
#include "corpus_scope/ingest.hpp"
#include "corpus_scope/lda.hpp"
#include "corpus_scope/lsa.hpp"
#include "corpus_scope/vocabulary.hpp"

// Pipeline configuration and its text form:
//
//   # comment
//   [corpus_ingest]
//   input = records.csv
//   format = csv
//   [lda]
//   topics = 6
//
// Sections are corpus_ingest, text_pipeline, eda, lsa, lda, bigrams and
// report_cli. Unknown sections or keys are errors.
namespace corpus_scope {

enum class Stage { Ingest, Text, Eda, Lsa, Lda, Bigrams };

inline constexpr Stage kAllStages[] = {Stage::Ingest, Stage::Text, Stage::Eda,
                                       Stage::Lsa,    Stage::Lda,  Stage::Bigrams};

std::string_view to_string(Stage stage);
/// Accepts the stage names above plus "text_pipeline" and "corpus_ingest".
/// Throws ConfigError otherwise.
Stage parse_stage(std::string_view name);

struct PipelineConfig {
  // corpus_ingest
  std::filesystem::path input;
  ingest::Format format = ingest::Format::CSV;
  std::string phrase;  // empty: keep every record

  // text_pipeline
  std::filesystem::path stoplist;  // empty: environment, then bundled list
  std::size_t vocab_size = text::kDefaultVocabularyCap;

  // eda
  std::size_t top_terms = 20;
  int forecast_years = 2;  // forecasts for the years after the last observed one

  // lsa
  int dims = lsa::kDefaultDims;
  std::size_t labels = 5;  // labelled documents and terms in the map

  // lda
  lda::LdaConfig lda;  // seed comes from `seed`, burn-in from `burn_in`
  std::optional<int> burn_in;  // unset: min(200, iterations / 5)
  std::size_t top_words = 10;
  int chains = 1;

  // bigrams
  std::uint64_t bigram_threshold = bigrams::kDefaultThreshold;

  // report_cli
  std::string country;
  std::filesystem::path out = "out";
  std::uint64_t seed = 42;
  unsigned threads = 1;

  /// Throws ConfigError when a value is outside what its stage accepts.
  void validate() const;

  /// LDA settings with the pipeline seed and burn-in applied.
  lda::LdaConfig lda_config() const;
};

/// Applies one setting. Throws ConfigError for an unknown section/key or an
/// unparseable value.
void set_option(PipelineConfig& config, std::string_view section, std::string_view key,
                std::string_view value);

/// Parses the config text on top of `base`. Errors name the offending line.
PipelineConfig parse_config(std::string_view text, PipelineConfig base = {});

/// Throws IOError when the file cannot be read.
PipelineConfig load_config(const std::filesystem::path& path, PipelineConfig base = {});

/// Text form of the run-relevant settings (input, output directory and thread
/// count are left out so equal analyses echo equal text).
std::string config_echo(const PipelineConfig& config);

}  // namespace corpus_scope
