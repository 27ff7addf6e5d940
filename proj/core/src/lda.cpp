#include "corpus_scope/lda.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numeric>

#include <fmt/format.h>

#include "corpus_scope/csv.hpp"
#include "corpus_scope/error.hpp"
#include "corpus_scope/parallel.hpp"

namespace corpus_scope::lda {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

double log_dirichlet_density(std::span<const double> theta, std::span<const double> alpha) {
  if (theta.empty() || theta.size() != alpha.size()) {
    throw SimplexError("theta and alpha must be non-empty and of equal length");
  }
  double sum_theta = 0.0;
  for (double t : theta) {
    if (!(t >= 0.0)) throw SimplexError("theta has a negative or NaN component");
    sum_theta += t;
  }
  if (std::abs(sum_theta - 1.0) > 1e-9) {
    throw SimplexError(fmt::format("theta sums to {}, not 1", sum_theta));
  }
  double sum_alpha = 0.0;
  double log_norm = 0.0;
  for (double a : alpha) {
    if (!(a > 0.0) || !std::isfinite(a)) throw DomainError("Dirichlet parameters must be positive");
    sum_alpha += a;
    log_norm -= std::lgamma(a);
  }
  log_norm += std::lgamma(sum_alpha);

  double log_kernel = 0.0;
  for (std::size_t i = 0; i < theta.size(); ++i) {
    if (alpha[i] == 1.0) continue;  // theta^0 == 1, including theta == 0
    log_kernel += (alpha[i] - 1.0) * std::log(theta[i]);
  }
  return log_norm + log_kernel;
}

double dirichlet_density(std::span<const double> theta, std::span<const double> alpha) {
  return std::exp(log_dirichlet_density(theta, alpha));
}

void LdaConfig::validate() const {
  if (k < 1) throw ConfigError("LDA needs at least one topic");
  if (!(beta > 0.0)) throw ConfigError("LDA beta must be positive");
  if (!std::isfinite(alpha)) throw ConfigError("LDA alpha must be finite");
  if (iterations < 1) throw ConfigError("LDA needs at least one iteration");
  if (burn_in < 0 || burn_in >= iterations) {
    throw ConfigError("LDA burn-in must lie in [0, iterations)");
  }
}

int Rng::below(int n) {
  const int v = static_cast<int>(uniform() * n);
  return std::min(v, n - 1);
}

GibbsSampler::GibbsSampler(std::vector<std::vector<int>> docs, int vocab_size,
                           const LdaConfig& config)
    : docs_(std::move(docs)),
      k_(config.k),
      vocab_size_(vocab_size),
      alpha_(config.effective_alpha()),
      beta_(config.beta) {
  config.validate();
  if (vocab_size_ < 1) throw ConfigError("LDA vocabulary is empty");
  for (const auto& doc : docs_) {
    for (int w : doc) {
      if (w < 0 || w >= vocab_size_) throw ConfigError("word id outside the vocabulary");
    }
    total_tokens_ += doc.size();
  }
  scratch_.resize(static_cast<std::size_t>(k_));
  z_.resize(docs_.size());
  for (std::size_t d = 0; d < docs_.size(); ++d) z_[d].assign(docs_[d].size(), 0);
  rebuild_counts();
}

void GibbsSampler::rebuild_counts() {
  const auto k = static_cast<std::size_t>(k_);
  const auto v = static_cast<std::size_t>(vocab_size_);
  n_tw_.assign(k * v, 0);
  n_dt_.assign(docs_.size() * k, 0);
  n_t_.assign(k, 0);
  for (std::size_t d = 0; d < docs_.size(); ++d) {
    for (std::size_t n = 0; n < docs_[d].size(); ++n) {
      const auto t = static_cast<std::size_t>(z_[d][n]);
      ++n_tw_[t * v + static_cast<std::size_t>(docs_[d][n])];
      ++n_dt_[d * k + t];
      ++n_t_[t];
    }
  }
}

void GibbsSampler::initialize(Rng& rng) {
  for (auto& doc_z : z_) {
    for (int& t : doc_z) t = rng.below(k_);
  }
  rebuild_counts();
}

void GibbsSampler::initialize(std::vector<std::vector<int>> assignments) {
  if (assignments.size() != docs_.size()) throw ConfigError("assignment shape mismatch");
  for (std::size_t d = 0; d < docs_.size(); ++d) {
    if (assignments[d].size() != docs_[d].size()) throw ConfigError("assignment shape mismatch");
    for (int t : assignments[d]) {
      if (t < 0 || t >= k_) throw ConfigError("assignment outside the topic range");
    }
  }
  z_ = std::move(assignments);
  rebuild_counts();
}

void GibbsSampler::sweep(Rng& rng) {
  const auto k = static_cast<std::size_t>(k_);
  const auto v = static_cast<std::size_t>(vocab_size_);
  const double v_beta = static_cast<double>(vocab_size_) * beta_;
  for (std::size_t d = 0; d < docs_.size(); ++d) {
    std::uint64_t* dt = &n_dt_[d * k];
    for (std::size_t n = 0; n < docs_[d].size(); ++n) {
      const auto w = static_cast<std::size_t>(docs_[d][n]);
      auto t = static_cast<std::size_t>(z_[d][n]);
      --dt[t];
      --n_tw_[t * v + w];
      --n_t_[t];

      double total = 0.0;
      for (std::size_t s = 0; s < k; ++s) {
        const double p = (static_cast<double>(dt[s]) + alpha_) *
                         (static_cast<double>(n_tw_[s * v + w]) + beta_) /
                         (static_cast<double>(n_t_[s]) + v_beta);
        total += p;
        scratch_[s] = total;
      }
      const double u = rng.uniform() * total;
      t = k - 1;
      for (std::size_t s = 0; s < k; ++s) {
        if (u < scratch_[s]) {
          t = s;
          break;
        }
      }

      z_[d][n] = static_cast<int>(t);
      ++dt[t];
      ++n_tw_[t * v + w];
      ++n_t_[t];
    }
  }
}

std::vector<double> GibbsSampler::conditional(std::size_t d, std::size_t n) const {
  const auto k = static_cast<std::size_t>(k_);
  const auto v = static_cast<std::size_t>(vocab_size_);
  const double v_beta = static_cast<double>(vocab_size_) * beta_;
  const auto w = static_cast<std::size_t>(docs_.at(d).at(n));
  const auto cur = static_cast<std::size_t>(z_[d][n]);
  std::vector<double> p(k);
  for (std::size_t s = 0; s < k; ++s) {
    const double own = s == cur ? 1.0 : 0.0;
    p[s] = (static_cast<double>(n_dt_[d * k + s]) - own + alpha_) *
           (static_cast<double>(n_tw_[s * v + w]) - own + beta_) /
           (static_cast<double>(n_t_[s]) - own + v_beta);
  }
  return p;
}

double GibbsSampler::log_likelihood() const {
  const auto k = static_cast<std::size_t>(k_);
  const auto v = static_cast<std::size_t>(vocab_size_);
  const double v_beta = static_cast<double>(vocab_size_) * beta_;
  const double k_alpha = static_cast<double>(k_) * alpha_;
  const double lg_beta = std::lgamma(beta_);
  const double lg_alpha = std::lgamma(alpha_);

  // log p(w | z): zero counts contribute lgamma(beta) - lgamma(beta) = 0.
  double ll = static_cast<double>(k_) * std::lgamma(v_beta);
  for (std::size_t t = 0; t < k; ++t) {
    for (std::size_t w = 0; w < v; ++w) {
      const auto c = n_tw_[t * v + w];
      if (c > 0) ll += std::lgamma(static_cast<double>(c) + beta_) - lg_beta;
    }
    ll -= std::lgamma(static_cast<double>(n_t_[t]) + v_beta);
  }
  // log p(z)
  ll += static_cast<double>(docs_.size()) * std::lgamma(k_alpha);
  for (std::size_t d = 0; d < docs_.size(); ++d) {
    for (std::size_t t = 0; t < k; ++t) {
      const auto c = n_dt_[d * k + t];
      if (c > 0) ll += std::lgamma(static_cast<double>(c) + alpha_) - lg_alpha;
    }
    ll -= std::lgamma(static_cast<double>(docs_[d].size()) + k_alpha);
  }
  return ll;
}

MatrixXd GibbsSampler::phi() const {
  const auto v = static_cast<std::size_t>(vocab_size_);
  const double v_beta = static_cast<double>(vocab_size_) * beta_;
  MatrixXd out(k_, vocab_size_);
  for (Index t = 0; t < k_; ++t) {
    const double denom = static_cast<double>(n_t_[static_cast<std::size_t>(t)]) + v_beta;
    for (Index w = 0; w < vocab_size_; ++w) {
      out(t, w) = (static_cast<double>(n_tw_[static_cast<std::size_t>(t) * v + static_cast<std::size_t>(w)]) + beta_) / denom;
    }
  }
  return out;
}

MatrixXd GibbsSampler::theta() const {
  const auto k = static_cast<std::size_t>(k_);
  const double k_alpha = static_cast<double>(k_) * alpha_;
  MatrixXd out(static_cast<Index>(docs_.size()), k_);
  for (std::size_t d = 0; d < docs_.size(); ++d) {
    const double denom = static_cast<double>(docs_[d].size()) + k_alpha;
    for (std::size_t t = 0; t < k; ++t) {
      out(static_cast<Index>(d), static_cast<Index>(t)) =
          (static_cast<double>(n_dt_[d * k + t]) + alpha_) / denom;
    }
  }
  return out;
}

bool GibbsSampler::counts_consistent() const {
  GibbsSampler fresh = *this;
  fresh.rebuild_counts();
  const std::uint64_t sum_tw = std::accumulate(n_tw_.begin(), n_tw_.end(), std::uint64_t{0});
  const std::uint64_t sum_dt = std::accumulate(n_dt_.begin(), n_dt_.end(), std::uint64_t{0});
  const std::uint64_t sum_t = std::accumulate(n_t_.begin(), n_t_.end(), std::uint64_t{0});
  return fresh.n_tw_ == n_tw_ && fresh.n_dt_ == n_dt_ && fresh.n_t_ == n_t_ &&
         sum_tw == total_tokens_ && sum_dt == total_tokens_ && sum_t == total_tokens_;
}

LdaModel fit_lda(const std::vector<text::TokenSequence>& sequences, const text::Vocabulary& vocab,
                 const LdaConfig& config, const SweepObserver& observer) {
  config.validate();
  if (vocab.empty()) throw EmptyCorpusError("LDA vocabulary is empty");

  LdaModel model;
  model.config = config;
  model.terms = vocab.terms();
  std::vector<std::vector<int>> docs;
  for (const auto& seq : sequences) {
    std::vector<int> ids;
    for (const auto& tok : seq.tokens) {
      if (auto j = vocab.index_of(tok)) ids.push_back(static_cast<int>(*j));
    }
    if (ids.empty()) {
      model.dropped_docs.push_back(seq.doc_id);
      continue;
    }
    model.doc_ids.push_back(seq.doc_id);
    docs.push_back(std::move(ids));
  }
  if (docs.empty()) throw EmptyCorpusError("no document has an in-vocabulary token");

  GibbsSampler sampler(std::move(docs), static_cast<int>(vocab.size()), config);
  Rng rng(config.seed);
  sampler.initialize(rng);

  MatrixXd phi_sum;
  MatrixXd theta_sum;
  int averaged = 0;
  for (int it = 1; it <= config.iterations; ++it) {
    sampler.sweep(rng);
    model.log_likelihood.push_back(sampler.log_likelihood());
    if (config.average_samples && it > config.burn_in) {
      if (averaged == 0) {
        phi_sum = sampler.phi();
        theta_sum = sampler.theta();
      } else {
        phi_sum += sampler.phi();
        theta_sum += sampler.theta();
      }
      ++averaged;
    }
    if (observer) observer(it, sampler);
  }

  model.topic_word_counts = sampler.topic_word_counts();
  model.doc_topic_counts = sampler.doc_topic_counts();
  model.assignments = sampler.assignments();
  if (averaged > 0) {
    model.phi = phi_sum / averaged;
    model.theta = theta_sum / averaged;
  } else {
    model.phi = sampler.phi();
    model.theta = sampler.theta();
  }
  return model;
}

LdaModel fit_lda_chains(const std::vector<text::TokenSequence>& sequences,
                        const text::Vocabulary& vocab, const LdaConfig& config,
                        const std::vector<std::uint64_t>& seeds, unsigned threads) {
  if (seeds.empty()) throw ConfigError("at least one chain seed is required");
  std::vector<LdaModel> chains(seeds.size());
  parallel_chunks(seeds.size(), threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t c = begin; c < end; ++c) {
      LdaConfig chain_config = config;
      chain_config.seed = seeds[c];
      chains[c] = fit_lda(sequences, vocab, chain_config);
    }
  });
  std::size_t best = 0;
  for (std::size_t c = 1; c < chains.size(); ++c) {
    const double lb = chains[best].log_likelihood.back();
    const double lc = chains[c].log_likelihood.back();
    if (lc > lb || (lc == lb && seeds[c] < seeds[best])) best = c;
  }
  return std::move(chains[best]);
}

std::vector<std::vector<WeightedTerm>> top_words_per_topic(const LdaModel& model, std::size_t m) {
  if (m == 0) throw ConfigError("top_words_per_topic needs m >= 1");
  std::vector<std::vector<WeightedTerm>> out;
  const Index v = model.phi.cols();
  for (Index t = 0; t < model.phi.rows(); ++t) {
    std::vector<Index> order(static_cast<std::size_t>(v));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](Index a, Index b) {
      const double pa = model.phi(t, a);
      const double pb = model.phi(t, b);
      return pa != pb ? pa > pb
                      : model.terms[static_cast<std::size_t>(a)] < model.terms[static_cast<std::size_t>(b)];
    });
    if (order.size() > m) order.resize(m);
    std::vector<WeightedTerm> topic;
    for (Index w : order) topic.push_back({model.terms[static_cast<std::size_t>(w)], model.phi(t, w)});
    out.push_back(std::move(topic));
  }
  return out;
}

Eigen::VectorXd doc_topic_distribution(const LdaModel& model, std::string_view doc_id) {
  auto it = std::find(model.doc_ids.begin(), model.doc_ids.end(), doc_id);
  if (it == model.doc_ids.end()) throw NotFoundError(fmt::format("document '{}' is not in the LDA model", doc_id));
  return model.theta.row(it - model.doc_ids.begin()).transpose();
}

// ---------------------------------------------------------------------------
// Persistence

namespace {

constexpr std::string_view kMagic = "corpus-scope-lda 1";

void append_numbers(std::string& out, const auto& values) {
  bool first = true;
  for (const auto& v : values) {
    if (!first) out.push_back(',');
    first = false;
    out += fmt::format("{}", v);
  }
  out.push_back('\n');
}

class LineReader {
 public:
  explicit LineReader(std::string_view text) : text_(text) {}

  bool next(std::string_view& line) {
    if (pos_ >= text_.size()) return false;
    std::size_t eol = text_.find('\n', pos_);
    if (eol == std::string_view::npos) eol = text_.size();
    line = text_.substr(pos_, eol - pos_);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    pos_ = eol + 1;
    ++line_no_;
    return true;
  }
  std::string_view require() {
    std::string_view line;
    if (!next(line)) throw SchemaError("LDA model file ends early");
    return line;
  }
  std::size_t line_no() const { return line_no_; }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_no_ = 0;
};

template <typename T>
T parse_number(std::string_view s, std::size_t line) {
  T value{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw SchemaError(fmt::format("LDA model line {}: bad number '{}'", line, s));
  }
  return value;
}

std::vector<std::string> fields_of(std::string_view line) {
  auto records = csv::parse(line);
  if (records.empty()) return {};
  return std::move(records.front().fields);
}

void expect_section(LineReader& in, std::string_view name) {
  const auto line = in.require();
  if (line != name) {
    throw SchemaError(fmt::format("LDA model line {}: expected section {}", in.line_no(), name));
  }
}

}  // namespace

std::string save_model(const LdaModel& model) {
  const auto& c = model.config;
  std::string out(kMagic);
  out += '\n';
  out += fmt::format("k={}\nalpha={}\nbeta={}\niterations={}\nburn_in={}\nseed={}\naverage_samples={}\n",
                     c.k, c.effective_alpha(), c.beta, c.iterations, c.burn_in, c.seed,
                     c.average_samples ? 1 : 0);
  out += fmt::format("terms={}\ndocuments={}\ndropped={}\nsweeps={}\n", model.terms.size(),
                     model.doc_ids.size(), model.dropped_docs.size(), model.log_likelihood.size());

  out += "[terms]\n";
  for (const auto& t : model.terms) {
    out += csv::escape(t);
    out += '\n';
  }
  out += "[dropped]\n";
  for (const auto& id : model.dropped_docs) {
    out += csv::escape(id);
    out += '\n';
  }
  const std::size_t v = model.terms.size();
  const auto k = static_cast<std::size_t>(c.k);
  out += "[topic_word_counts]\n";
  for (std::size_t t = 0; t < k; ++t) {
    append_numbers(out, std::span(model.topic_word_counts).subspan(t * v, v));
  }
  out += "[doc_topic_counts]\n";
  for (std::size_t d = 0; d < model.doc_ids.size(); ++d) {
    out += csv::escape(model.doc_ids[d]);
    out += ',';
    append_numbers(out, std::span(model.doc_topic_counts).subspan(d * k, k));
  }
  out += "[phi]\n";
  for (Index t = 0; t < model.phi.rows(); ++t) {
    const VectorXd row = model.phi.row(t).transpose();
    append_numbers(out, std::span(row.data(), static_cast<std::size_t>(row.size())));
  }
  out += "[theta]\n";
  for (Index d = 0; d < model.theta.rows(); ++d) {
    const VectorXd row = model.theta.row(d).transpose();
    append_numbers(out, std::span(row.data(), static_cast<std::size_t>(row.size())));
  }
  out += "[log_likelihood]\n";
  for (double ll : model.log_likelihood) out += fmt::format("{}\n", ll);
  return out;
}

LdaModel load_model(std::string_view text) {
  LineReader in(text);
  if (in.require() != kMagic) throw SchemaError("not a corpus-scope LDA model (or unsupported version)");

  LdaModel model;
  auto header = [&](std::string_view key) {
    const auto line = in.require();
    if (!line.starts_with(key) || line.size() <= key.size() || line[key.size()] != '=') {
      throw SchemaError(fmt::format("LDA model line {}: expected '{}='", in.line_no(), key));
    }
    return line.substr(key.size() + 1);
  };
  model.config.k = parse_number<int>(header("k"), in.line_no());
  model.config.alpha = parse_number<double>(header("alpha"), in.line_no());
  model.config.beta = parse_number<double>(header("beta"), in.line_no());
  model.config.iterations = parse_number<int>(header("iterations"), in.line_no());
  model.config.burn_in = parse_number<int>(header("burn_in"), in.line_no());
  model.config.seed = parse_number<std::uint64_t>(header("seed"), in.line_no());
  model.config.average_samples = parse_number<int>(header("average_samples"), in.line_no()) != 0;
  const auto v = parse_number<std::size_t>(header("terms"), in.line_no());
  const auto n_docs = parse_number<std::size_t>(header("documents"), in.line_no());
  const auto n_dropped = parse_number<std::size_t>(header("dropped"), in.line_no());
  const auto sweeps = parse_number<std::size_t>(header("sweeps"), in.line_no());
  model.config.validate();
  const auto k = static_cast<std::size_t>(model.config.k);

  auto single_field = [&] {
    auto f = fields_of(in.require());
    if (f.size() != 1) throw SchemaError(fmt::format("LDA model line {}: expected one field", in.line_no()));
    return f.front();
  };
  auto number_row = [&](std::vector<std::string>::const_iterator first,
                        std::vector<std::string>::const_iterator last, std::size_t expected,
                        auto tag) {
    using T = decltype(tag);
    if (static_cast<std::size_t>(last - first) != expected) {
      throw SchemaError(fmt::format("LDA model line {}: expected {} values", in.line_no(), expected));
    }
    std::vector<T> row;
    for (auto it = first; it != last; ++it) row.push_back(parse_number<T>(*it, in.line_no()));
    return row;
  };

  expect_section(in, "[terms]");
  for (std::size_t j = 0; j < v; ++j) model.terms.push_back(single_field());
  expect_section(in, "[dropped]");
  for (std::size_t j = 0; j < n_dropped; ++j) model.dropped_docs.push_back(single_field());

  expect_section(in, "[topic_word_counts]");
  for (std::size_t t = 0; t < k; ++t) {
    auto f = fields_of(in.require());
    auto row = number_row(f.cbegin(), f.cend(), v, std::uint64_t{});
    model.topic_word_counts.insert(model.topic_word_counts.end(), row.begin(), row.end());
  }
  expect_section(in, "[doc_topic_counts]");
  for (std::size_t d = 0; d < n_docs; ++d) {
    auto f = fields_of(in.require());
    if (f.empty()) throw SchemaError(fmt::format("LDA model line {}: empty row", in.line_no()));
    model.doc_ids.push_back(f.front());
    auto row = number_row(f.cbegin() + 1, f.cend(), k, std::uint64_t{});
    model.doc_topic_counts.insert(model.doc_topic_counts.end(), row.begin(), row.end());
  }
  expect_section(in, "[phi]");
  model.phi.resize(static_cast<Index>(k), static_cast<Index>(v));
  for (std::size_t t = 0; t < k; ++t) {
    auto f = fields_of(in.require());
    auto row = number_row(f.cbegin(), f.cend(), v, double{});
    for (std::size_t w = 0; w < v; ++w) model.phi(static_cast<Index>(t), static_cast<Index>(w)) = row[w];
  }
  expect_section(in, "[theta]");
  model.theta.resize(static_cast<Index>(n_docs), static_cast<Index>(k));
  for (std::size_t d = 0; d < n_docs; ++d) {
    auto f = fields_of(in.require());
    auto row = number_row(f.cbegin(), f.cend(), k, double{});
    for (std::size_t t = 0; t < k; ++t) model.theta(static_cast<Index>(d), static_cast<Index>(t)) = row[t];
  }
  expect_section(in, "[log_likelihood]");
  for (std::size_t s = 0; s < sweeps; ++s) {
    model.log_likelihood.push_back(parse_number<double>(in.require(), in.line_no()));
  }
  return model;
}

}  // namespace corpus_scope::lda
