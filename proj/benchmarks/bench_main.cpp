#include <string>
#include <vector>

#include <benchmark/benchmark.h>

#include "corpus_scope/bigrams.hpp"
#include "corpus_scope/dtm.hpp"
#include "corpus_scope/lda.hpp"
#include "corpus_scope/lsa.hpp"
#include "corpus_scope/tokenize.hpp"
#include "support/generators.hpp"

using namespace corpus_scope;

namespace {

std::string sample_text(std::size_t words) {
  gen::Gen g(1);
  const auto vocab = gen::alphabet(40);
  std::string s;
  for (std::size_t i = 0; i < words; ++i) {
    if (i) s += (i % 17 == 0) ? ". " : " ";
    s += g.pick(vocab);
  }
  return s;
}

std::vector<text::TokenSequence> random_sequences(std::size_t docs, std::size_t len, std::size_t words) {
  gen::Gen g(2);
  const auto vocab = gen::alphabet(words);
  std::vector<std::vector<std::string>> out(docs);
  for (auto& d : out)
    for (std::size_t i = 0; i < len; ++i) d.push_back(g.pick(vocab));
  return gen::sequences(out);
}

}  // namespace

static void BM_Tokenize(benchmark::State& state) {
  const auto text = sample_text(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(text::tokenize(text));
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * text.size()));
}
BENCHMARK(BM_Tokenize)->Arg(1000)->Arg(10000);

static void BM_CaSolver(benchmark::State& state) {
  const auto seqs = random_sequences(400, 80, 300);
  const auto vocab = text::build_vocabulary(seqs, 300);
  const auto dtm = text::build_dtm(seqs, vocab);
  lsa::CaOptions opts;
  opts.method = state.range(0) == 0 ? lsa::SvdMethod::Lanczos : lsa::SvdMethod::Dense;
  for (auto _ : state) benchmark::DoNotOptimize(lsa::fit_ca(dtm, 2, opts));
  state.SetLabel(state.range(0) == 0 ? "lanczos" : "dense");
}
BENCHMARK(BM_CaSolver)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

static void BM_GibbsSweep(benchmark::State& state) {
  const auto seqs = random_sequences(200, 100, 500);
  const auto vocab = text::build_vocabulary(seqs, 500);
  std::vector<std::vector<int>> docs;
  for (const auto& s : seqs) {
    std::vector<int> ids;
    for (const auto& t : s.tokens) ids.push_back(static_cast<int>(*vocab.index_of(t)));
    docs.push_back(std::move(ids));
  }
  lda::LdaConfig c;
  c.k = static_cast<int>(state.range(0));
  lda::GibbsSampler sampler(docs, static_cast<int>(vocab.size()), c);
  lda::Rng rng(3);
  sampler.initialize(rng);
  for (auto _ : state) sampler.sweep(rng);
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * sampler.total_tokens()));
}
BENCHMARK(BM_GibbsSweep)->Arg(6)->Arg(20);

static void BM_CountBigrams(benchmark::State& state) {
  const auto seqs = random_sequences(1000, 100, 200);
  for (auto _ : state) benchmark::DoNotOptimize(bigrams::count_bigrams(seqs, static_cast<unsigned>(state.range(0))));
}
BENCHMARK(BM_CountBigrams)->Arg(1)->Arg(4);
BENCHMARK_MAIN();
