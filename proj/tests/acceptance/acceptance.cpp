// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Tolerances and time limits are fixed here.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "corpus_scope/bigrams.hpp"
#include "corpus_scope/dtm.hpp"
#include "corpus_scope/eda.hpp"
#include "corpus_scope/lda.hpp"
#include "corpus_scope/lsa.hpp"
#include "oracles/oracles.hpp"
#include "support/files.hpp"
#include "support/generators.hpp"
#include "support/planted.hpp"

using namespace corpus_scope;

namespace {

constexpr double kSingularValueTol = 1e-9;
constexpr double kInertiaRelTol = 1e-8;
constexpr double kHandCheckTol = 1e-12;
constexpr double kTopicCosine = 0.95;
constexpr double kDocMass = 0.8;
constexpr double kDocShare = 0.9;
constexpr double kDirichletTol = 1e-12;
constexpr double kMonteCarloRelTol = 0.02;
constexpr int kMonteCarloSamples = 1'000'000;
constexpr double kFitTol = 1e-9;

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(std::string why) {
    if (pass) detail = std::move(why);
    pass = false;
  }
};

struct Criterion {
  int id;
  std::string name;
  double time_limit;  // seconds, 0 for none
  std::function<Outcome()> check;
};

oracle::Counts to_counts(const std::vector<std::vector<std::uint64_t>>& x) { return x; }

Outcome ca_oracle_equivalence() {
  Outcome out;
  gen::Gen g(101);
  double worst_sv = 0, worst_inertia = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const auto rows = static_cast<std::size_t>(g.integer(2, 12));
    const auto cols = static_cast<std::size_t>(g.integer(2, 10));
    const auto x = gen::count_matrix(g, rows, cols, 5);
    const auto dtm = text::SparseDTM::from_dense(x);
    const int dims = static_cast<int>(std::min(rows, cols)) - 1;
    if (dims < 1) continue;

    lsa::CaOptions opts;
    opts.method = lsa::SvdMethod::Lanczos;
    const auto model = lsa::fit_ca(dtm, dims, opts);
    if (model.used_dense_solver) out.fail(fmt::format("trial {}: dense solver used instead of Lanczos", trial));
    const auto ref = oracle::jacobi_singular_values(oracle::residual_matrix(to_counts(x)));
    for (int k = 0; k < model.retained_dims; ++k) {
      const double err = std::fabs(model.singular_values(k) - static_cast<double>(ref[static_cast<std::size_t>(k)]));
      worst_sv = std::max(worst_sv, err);
      if (err > kSingularValueTol) out.fail(fmt::format("trial {} dim {}: |diff| {:.3g}", trial, k + 1, err));
    }
    const double chi = static_cast<double>(oracle::chi_square_over_n(to_counts(x)));
    const double inertia = lsa::total_inertia(dtm);
    const double rel = chi == 0 ? std::fabs(inertia) : std::fabs(inertia - chi) / chi;
    worst_inertia = std::max(worst_inertia, rel);
    if (rel > kInertiaRelTol) out.fail(fmt::format("trial {}: inertia rel diff {:.3g}", trial, rel));
  }
  if (out.pass) out.detail = fmt::format("max sv diff {:.2e}, max inertia rel diff {:.2e}", worst_sv, worst_inertia);
  return out;
}

Outcome hand_check_matrix() {
  Outcome out;
  const auto diag = text::SparseDTM::from_dense({{2, 0}, {0, 2}});
  const auto model = lsa::fit_ca(diag, 1);
  const double lambda = model.singular_values(0) * model.singular_values(0);
  if (std::fabs(lambda - 1) > kHandCheckTol) out.fail(fmt::format("lambda1 = {:.17g}", lambda));
  const double inertia = lsa::total_inertia(diag);
  if (std::fabs(inertia - 1) > kHandCheckTol) out.fail(fmt::format("inertia = {:.17g}", inertia));
  const double flat = lsa::total_inertia(text::SparseDTM::from_dense({{1, 1}, {1, 1}}));
  if (std::fabs(flat) > kHandCheckTol) out.fail(fmt::format("independence inertia = {:.17g}", flat));
  if (out.pass) out.detail = fmt::format("lambda1 {:.17g}, inertia {:.17g}, independence {:.3g}", lambda, inertia, flat);
  return out;
}

Outcome planted_topic_recovery() {
  Outcome out;
  const auto p = gen::planted_corpus(2024);
  lda::LdaConfig c;
  c.k = 2;
  c.alpha = 0.1;
  c.beta = 0.01;
  c.iterations = 200;
  c.burn_in = 50;
  c.seed = 7;
  int inconsistent = 0, sweeps = 0;
  const auto m = lda::fit_lda(p.sequences, p.vocab, c, [&](int, const lda::GibbsSampler& s) {
    ++sweeps;
    if (!s.counts_consistent()) ++inconsistent;
  });
  if (inconsistent > 0) out.fail(fmt::format("counts inconsistent after {} sweeps", inconsistent));

  oracle::Matrix est(2, std::vector<long double>(40));
  for (int t = 0; t < 2; ++t)
    for (int w = 0; w < 40; ++w) est[t][w] = m.phi(t, w);
  const auto align = oracle::greedy_align(est, p.phi);
  long double worst = 1;
  for (auto cos : align.cosines) worst = std::min(worst, cos);
  if (worst < kTopicCosine) out.fail(fmt::format("topic cosine {:.4f}", static_cast<double>(worst)));

  std::size_t good = 0;
  for (std::size_t d = 0; d < p.sequences.size(); ++d) {
    const auto theta = lda::doc_topic_distribution(m, p.sequences[d].doc_id);
    for (int t = 0; t < 2; ++t) {
      if (align.planted_of[static_cast<std::size_t>(t)] == p.topic_of[d] && theta(t) >= kDocMass) ++good;
    }
  }
  const double share = static_cast<double>(good) / static_cast<double>(p.sequences.size());
  if (share < kDocShare) out.fail(fmt::format("document share {:.3f}", share));
  if (out.pass) {
    out.detail = fmt::format("min cosine {:.4f}, doc share {:.3f}, {} sweeps conserved",
                             static_cast<double>(worst), share, sweeps);
  }
  return out;
}

Outcome dirichlet_density() {
  Outcome out;
  const std::vector<double> flat = {1, 1};
  for (double x : {0.0, 0.05, 0.25, 0.5, 0.77, 1.0}) {
    const double v = lda::dirichlet_density(std::vector<double>{x, 1 - x}, flat);
    if (std::fabs(v - 1) > kDirichletTol) out.fail(fmt::format("alpha (1,1) at {}: {:.17g}", x, v));
  }
  const double mid = lda::dirichlet_density(std::vector<double>{0.5, 0.5}, std::vector<double>{2, 2});
  if (std::fabs(mid - 1.5) > kDirichletTol) out.fail(fmt::format("alpha (2,2) at midpoint: {:.17g}", mid));

  // Uniform points on the 2-simplex; the simplex has area 1/2 in (theta1, theta2).
  std::mt19937_64 rng(5);
  std::exponential_distribution<double> expo(1.0);
  const std::vector<double> alpha = {2, 3, 4};
  double sum = 0;
  std::vector<double> theta(3);
  for (int i = 0; i < kMonteCarloSamples; ++i) {
    double total = 0;
    for (auto& t : theta) total += (t = expo(rng));
    for (auto& t : theta) t /= total;
    sum += lda::dirichlet_density(theta, alpha);
  }
  const double integral = 0.5 * sum / kMonteCarloSamples;
  if (std::fabs(integral - 1) > kMonteCarloRelTol) out.fail(fmt::format("integral {:.4f}", integral));
  if (out.pass) out.detail = fmt::format("midpoint {:.17g}, integral {:.5f}", mid, integral);
  return out;
}

Outcome quadratic_fit() {
  Outcome out;
  gen::Gen g(55);
  double worst_exact = 0, worst_oracle = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = static_cast<int>(g.integer(4, 25));
    const int start = static_cast<int>(g.integer(1990, 2015));

    // Noiseless: y = a (x - start)^2 + b (x - start) + c.
    const auto a = g.integer(0, 20), b = g.integer(-10, 60), c = g.integer(0, 500);
    std::vector<eda::YearCount> exact;
    for (int i = 0; i < n; ++i) {
      const auto y = a * i * i + b * i + c;
      if (y < 0) continue;
      exact.push_back({start + i, static_cast<std::uint64_t>(y)});
    }
    if (exact.size() == static_cast<std::size_t>(n)) {
      const auto fit = eda::fit_quadratic(eda::YearSeries(exact));
      const double s = fit.x_center - start;
      const double c2 = static_cast<double>(a);
      const double c1 = static_cast<double>(b) + 2 * static_cast<double>(a) * s;
      const double c0 = static_cast<double>(a) * s * s + static_cast<double>(b) * s + static_cast<double>(c);
      const double err = std::max({std::fabs(fit.c2 - c2), std::fabs(fit.c1 - c1), std::fabs(fit.c0 - c0)});
      worst_exact = std::max(worst_exact, err);
      if (err > kFitTol) out.fail(fmt::format("exact trial {}: coefficient error {:.3g}", trial, err));
      if (fit.r_squared < 0 || fit.r_squared > 1) out.fail(fmt::format("exact trial {}: R2 {}", trial, fit.r_squared));
    }

    // Random series versus the normal-equations oracle.
    std::vector<eda::YearCount> pts;
    std::vector<long double> xs, ys;
    for (int i = 0; i < n; ++i) {
      const auto y = static_cast<std::uint64_t>(g.integer(0, 10000));
      pts.push_back({start + i, y});
      xs.push_back(start + i);
      ys.push_back(static_cast<long double>(y));
    }
    const auto fit = eda::fit_quadratic(eda::YearSeries(pts));
    const auto ref = oracle::quadratic_normal_equations(xs, ys, fit.x_center);
    const double err = std::max({std::fabs(fit.c2 - static_cast<double>(ref.c2)),
                                 std::fabs(fit.c1 - static_cast<double>(ref.c1)),
                                 std::fabs(fit.c0 - static_cast<double>(ref.c0))});
    worst_oracle = std::max(worst_oracle, err);
    if (err > kFitTol) out.fail(fmt::format("oracle trial {}: coefficient error {:.3g}", trial, err));
    if (fit.r_squared < 0 || fit.r_squared > 1) out.fail(fmt::format("oracle trial {}: R2 {}", trial, fit.r_squared));
  }
  if (out.pass) out.detail = fmt::format("max exact error {:.2e}, max oracle error {:.2e}", worst_exact, worst_oracle);
  return out;
}

Outcome bigram_oracle() {
  Outcome out;
  gen::Gen g(77);
  const auto words = gen::alphabet(10);
  int pairs_checked = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto docs = gen::token_docs(g, 50, 100, words);
    const auto table = bigrams::count_bigrams(gen::sequences(docs));
    const auto ref = oracle::naive_bigrams(docs);
    if (table.pairs != ref) out.fail(fmt::format("trial {}: table differs from naive count", trial));
    for (std::uint64_t lo = 1; lo <= 12; ++lo) {
      for (std::uint64_t hi = lo + 1; hi <= 12; ++hi) {
        const auto a = bigrams::threshold_graph(table, lo);
        const auto b = bigrams::threshold_graph(table, hi);
        ++pairs_checked;
        for (const auto& e : b.edges) {
          if (std::find(a.edges.begin(), a.edges.end(), e) == a.edges.end()) {
            out.fail(fmt::format("trial {}: edge kept at {} but not at {}", trial, hi, lo));
          }
        }
      }
    }
  }
  if (out.pass) out.detail = fmt::format("100 corpora equal, {} threshold pairs monotone", pairs_checked);
  return out;
}

Outcome pipeline_determinism() {
  Outcome out;
#ifdef CORPUS_SCOPE_CLI
  const auto dir = testfs::scratch_dir("acceptance_determinism");
  const std::string input = (std::filesystem::path(CORPUS_SCOPE_TEST_DATA) / "mini_corpus.csv").string();
  std::vector<std::map<std::string, std::string>> hashes;
  for (const char* run : {"t1a", "t1b", "t8a", "t8b"}) {
    const std::string threads = run[1] == '1' ? "1" : "8";
    const auto cmd = fmt::format("{} run --input {} --seed 42 --threads {} --out {} > /dev/null 2>&1",
                                 CORPUS_SCOPE_CLI, input, threads, (dir / run).string());
    if (const int code = testfs::run_command(cmd); code != 0) {
      out.fail(fmt::format("run {} exited with {}", run, code));
      return out;
    }
    hashes.push_back(testfs::hash_directory(dir / run, std::string("timings.json")));
  }
  for (std::size_t i = 1; i < hashes.size(); ++i) {
    if (hashes[i] != hashes[0]) {
      for (const auto& [name, h] : hashes[0]) {
        const auto it = hashes[i].find(name);
        if (it == hashes[i].end() || it->second != h) out.fail(fmt::format("{} differs in run {}", name, i + 1));
      }
      if (out.pass) out.fail(fmt::format("file sets differ in run {}", i + 1));
    }
  }
  if (out.pass) out.detail = fmt::format("{} files identical across 4 runs (threads 1 and 8)", hashes[0].size());
#else
  out.fail("command-line tool not built");
#endif
  return out;
}

Outcome marginal_consistency() {
  Outcome out;
  gen::Gen g(88);
  const auto words = gen::alphabet(30);
  int checked = 0;
  while (checked < 100) {
    const auto docs = gen::token_docs(g, 20, 40, words);
    std::size_t tokens = 0;
    for (const auto& d : docs) tokens += d.size();
    if (tokens == 0) continue;
    const auto seqs = gen::sequences(docs);
    const auto vocab = text::build_vocabulary(seqs, static_cast<std::size_t>(g.integer(1, 30)));
    const auto dtm = text::build_dtm(seqs, vocab);
    const auto r = oracle::dense_recount(docs, vocab.terms());
    if (dtm.row_sums() != r.row_sums) out.fail(fmt::format("corpus {}: row sums differ", checked));
    if (dtm.col_sums() != r.col_sums) out.fail(fmt::format("corpus {}: column sums differ", checked));
    if (dtm.total() != r.total) out.fail(fmt::format("corpus {}: grand total differs", checked));
    std::uint64_t from_rows = 0, from_cols = 0;
    for (auto v : dtm.row_sums()) from_rows += v;
    for (auto v : dtm.col_sums()) from_cols += v;
    if (from_rows != dtm.total() || from_cols != dtm.total()) out.fail(fmt::format("corpus {}: marginals do not add up", checked));
    ++checked;
  }
  if (out.pass) out.detail = "100 corpora exact";
  return out;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "ca_oracle_equivalence", 10, ca_oracle_equivalence},
      {2, "ca_hand_check", 0, hand_check_matrix},
      {3, "lda_planted_recovery", 30, planted_topic_recovery},
      {4, "dirichlet_density", 0, dirichlet_density},
      {5, "quadratic_fit", 0, quadratic_fit},
      {6, "bigram_oracle", 0, bigram_oracle},
      {7, "pipeline_determinism", 20, pipeline_determinism},
      {8, "marginal_consistency", 0, marginal_consistency},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o.fail(fmt::format("exception: {}", e.what()));
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.time_limit > 0 && secs > c.time_limit) o.fail(fmt::format("took {:.2f} s, limit {:.0f} s", secs, c.time_limit));
    if (!o.pass) ++failures;
    std::printf("%s %d %s (%.2f s): %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name.c_str(), secs, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
