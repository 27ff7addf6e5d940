#pragma once

#include <cstddef>
#include <exception>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "corpus_scope/config.hpp"
#include "corpus_scope/error.hpp"
#include "corpus_scope/ingest.hpp"

// End-to-end runs: ingest -> text -> eda -> lsa -> lda -> bigrams, each stage
// writing its files into the output directory before the next one starts.
//
// Every file except timings.json depends only on the configuration and the
// input, so two runs with the same settings are byte-identical regardless of
// the thread count. timings.json holds wall-clock times and runtime details.
namespace corpus_scope {

std::string_view version();

/// Files written by a stage, in write order.
const std::vector<std::string>& stage_outputs(Stage stage);

inline constexpr std::string_view kReportFile = "run_report.json";
inline constexpr std::string_view kTimingsFile = "timings.json";
inline constexpr std::string_view kCompareFile = "compare.csv";

struct StageTiming {
  std::string stage;
  double seconds = 0;
};

struct RunReport {
  std::string command;  // "run", a stage name, or "compare"
  std::string version;
  bool succeeded = false;
  std::string failed_stage;
  std::string error;

  std::string provenance;
  std::size_t documents = 0;
  std::vector<ingest::RecordError> rejected_records;
  // Named lists of ids left out somewhere: "missing_year", "ca_documents",
  // "ca_terms", "lda_documents".
  std::map<std::string, std::vector<std::string>> dropped;

  std::vector<std::string> outputs;  // file names relative to the output directory
  std::vector<StageTiming> timings;
  std::string config_echo;
};

/// Raised when a stage fails after the output directory was created. The
/// report (also written to run_report.json) names the stage; `cause` is the
/// original error.
class PipelineFailure : public Error {
 public:
  PipelineFailure(RunReport report, std::exception_ptr cause);

  const RunReport& report() const noexcept { return report_; }
  std::exception_ptr cause() const noexcept { return cause_; }

 private:
  RunReport report_;
  std::exception_ptr cause_;
};

struct RunSelection {
  /// First stage whose files are written; earlier stages are recomputed in
  /// memory only.
  Stage from = Stage::Ingest;
  /// When set, only this stage (and what it depends on) runs, and only its
  /// files are written.
  std::optional<Stage> only;
};

/// Throws IOError before touching the output directory when the input cannot
/// be read, ConfigError on invalid settings, PipelineFailure on a stage error.
RunReport run_pipeline(const PipelineConfig& config, const RunSelection& selection = {});

/// Side-by-side statistics of the full corpus and the documents affiliated
/// with `country`, written to compare.csv with columns section,key,overall,subset.
/// Throws EmptyCorpusError when the subset is empty.
RunReport compare_subsets(const PipelineConfig& config, const std::string& country);

}  // namespace corpus_scope
