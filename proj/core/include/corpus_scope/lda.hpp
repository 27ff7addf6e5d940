#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "corpus_scope/vocabulary.hpp"

// Latent Dirichlet allocation by collapsed Gibbs sampling.
//
// Randomness comes from std::mt19937_64 (whose output sequence is fixed by
// the C++ standard). Uniform doubles are formed as (draw >> 11) * 2^-53, so a
// seed reproduces the same chain on every conforming platform.
namespace corpus_scope::lda {

/// log p(theta | alpha) for the Dirichlet distribution. Throws DomainError for
/// a non-positive alpha, SimplexError when theta is off the simplex by more
/// than 1e-9 or lengths differ.
double log_dirichlet_density(std::span<const double> theta, std::span<const double> alpha);
double dirichlet_density(std::span<const double> theta, std::span<const double> alpha);

inline constexpr int kDefaultTopics = 6;

struct LdaConfig {
  int k = kDefaultTopics;
  double alpha = 0;  // symmetric document-topic prior; <= 0 selects 50 / k
  double beta = 0.01;
  int iterations = 1000;
  int burn_in = 200;
  std::uint64_t seed = 42;
  bool average_samples = false;  // average phi/theta over post-burn-in sweeps

  double effective_alpha() const { return alpha > 0 ? alpha : 50.0 / k; }
  /// Throws ConfigError on k < 1, beta <= 0, iterations < 1 or burn_in outside [0, iterations).
  void validate() const;
};

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  /// Uniform integer in [0, n).
  int below(int n);

 private:
  std::mt19937_64 engine_;
};

/// Sampler state for a corpus of word-id documents. Counts are exact and are
/// kept consistent with the assignments after every sweep.
class GibbsSampler {
 public:
  GibbsSampler(std::vector<std::vector<int>> docs, int vocab_size, const LdaConfig& config);

  /// Uniform random initial assignments drawn from `rng`.
  void initialize(Rng& rng);
  /// Explicit initial assignments (same shape as the documents).
  void initialize(std::vector<std::vector<int>> assignments);

  /// One pass over every token in document order.
  void sweep(Rng& rng);

  /// Unnormalized full conditional for token (d, n) with that token removed
  /// from the counts.
  std::vector<double> conditional(std::size_t d, std::size_t n) const;

  /// Collapsed joint log p(w, z).
  double log_likelihood() const;

  Eigen::MatrixXd phi() const;    // k x V, rows sum to 1
  Eigen::MatrixXd theta() const;  // D x k, rows sum to 1

  int topics() const noexcept { return k_; }
  int vocab_size() const noexcept { return vocab_size_; }
  std::size_t total_tokens() const noexcept { return total_tokens_; }
  const std::vector<std::vector<int>>& documents() const noexcept { return docs_; }
  const std::vector<std::vector<int>>& assignments() const noexcept { return z_; }
  const std::vector<std::uint64_t>& topic_word_counts() const noexcept { return n_tw_; }  // k x V
  const std::vector<std::uint64_t>& doc_topic_counts() const noexcept { return n_dt_; }   // D x k
  const std::vector<std::uint64_t>& topic_totals() const noexcept { return n_t_; }

  /// True when every count table agrees with a fresh recount of the assignments.
  bool counts_consistent() const;

 private:
  void rebuild_counts();

  std::vector<std::vector<int>> docs_;
  std::vector<std::vector<int>> z_;
  int k_;
  int vocab_size_;
  double alpha_;
  double beta_;
  std::size_t total_tokens_ = 0;
  std::vector<std::uint64_t> n_tw_;
  std::vector<std::uint64_t> n_dt_;
  std::vector<std::uint64_t> n_t_;
  std::vector<double> scratch_;
};

struct LdaModel {
  LdaConfig config;
  std::vector<std::string> terms;    // vocabulary, column order of phi
  std::vector<std::string> doc_ids;  // row order of theta
  std::vector<std::string> dropped_docs;
  std::vector<std::uint64_t> topic_word_counts;  // k x V row-major
  std::vector<std::uint64_t> doc_topic_counts;   // D x k row-major
  std::vector<std::vector<int>> assignments;
  Eigen::MatrixXd phi;
  Eigen::MatrixXd theta;
  std::vector<double> log_likelihood;  // one entry per sweep

  int topics() const { return config.k; }
};

/// Called after every sweep with the 1-based sweep number.
using SweepObserver = std::function<void(int sweep, const GibbsSampler&)>;

/// Documents without in-vocabulary tokens are dropped (listed in the model).
/// Throws ConfigError on an invalid config, EmptyCorpusError when no document
/// remains.
LdaModel fit_lda(const std::vector<text::TokenSequence>& sequences, const text::Vocabulary& vocab,
                 const LdaConfig& config, const SweepObserver& observer = {});

/// Independent chains, one per seed, run on up to `threads` workers. Returns
/// the chain with the highest final log-likelihood (lowest seed on ties).
LdaModel fit_lda_chains(const std::vector<text::TokenSequence>& sequences,
                        const text::Vocabulary& vocab, const LdaConfig& config,
                        const std::vector<std::uint64_t>& seeds, unsigned threads = 1);

struct WeightedTerm {
  std::string term;
  double weight = 0;
};

/// Top-m terms per topic by phi, ties by ascending term.
std::vector<std::vector<WeightedTerm>> top_words_per_topic(const LdaModel& model, std::size_t m);

/// Theta row for a document. Throws NotFoundError for an unknown id.
Eigen::VectorXd doc_topic_distribution(const LdaModel& model, std::string_view doc_id);

/// Text format: key=value header, then CSV sections for the vocabulary, the
/// count tables and phi/theta (shortest round-trip decimal).
std::string save_model(const LdaModel& model);
/// Throws SchemaError on a malformed or unsupported document.
LdaModel load_model(std::string_view text);

}  // namespace corpus_scope::lda
