#include "corpus_scope/vocabulary.hpp"

#include <algorithm>
#include <map>

#include "corpus_scope/error.hpp"
#include "corpus_scope/parallel.hpp"
#include "corpus_scope/tokenize.hpp"

namespace corpus_scope::text {

std::vector<TokenSequence> build_sequences(const Corpus& corpus, const Stoplist& stoplist,
                                           TextFields fields, unsigned threads) {
  const auto& docs = corpus.documents();
  std::vector<TokenSequence> out(docs.size());
  parallel_chunks(docs.size(), threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const Document& d = docs[i];
      std::vector<std::string> tokens;
      auto append = [&](std::string_view s) {
        auto t = tokenize(s);
        tokens.insert(tokens.end(), std::make_move_iterator(t.begin()),
                      std::make_move_iterator(t.end()));
      };
      if (fields.title) append(d.title);
      if (fields.abstract) append(d.abstract);
      if (fields.keywords) {
        for (const auto& k : d.keywords) append(k);
      }
      out[i] = TokenSequence{d.id, remove_stopwords(std::move(tokens), stoplist)};
    }
  });
  return out;
}

Vocabulary::Vocabulary(std::vector<std::string> terms, std::vector<std::uint64_t> frequencies,
                       std::size_t cap)
    : terms_(std::move(terms)), frequencies_(std::move(frequencies)), cap_(cap) {
  if (terms_.size() != frequencies_.size()) {
    throw ConfigError("vocabulary terms and frequencies differ in length");
  }
  if (terms_.size() > cap_) throw ConfigError("vocabulary exceeds its cap");
  index_.reserve(terms_.size());
  for (std::size_t j = 0; j < terms_.size(); ++j) {
    if (!index_.emplace(terms_[j], j).second) {
      throw ConfigError("duplicate vocabulary term: " + terms_[j]);
    }
  }
}

std::optional<std::size_t> Vocabulary::index_of(std::string_view term) const {
  auto it = index_.find(std::string(term));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Vocabulary build_vocabulary(const std::vector<TokenSequence>& sequences, std::size_t cap) {
  if (cap == 0) throw ConfigError("vocabulary cap must be at least 1");
  if (sequences.empty()) throw EmptyCorpusError("cannot build a vocabulary from no documents");

  std::map<std::string, std::uint64_t, std::less<>> counts;
  for (const auto& seq : sequences) {
    for (const auto& t : seq.tokens) ++counts[t];
  }
  if (counts.empty()) throw EmptyCorpusError("corpus contains no tokens after filtering");

  std::vector<std::pair<std::string, std::uint64_t>> ranked(counts.begin(), counts.end());
  // std::map iteration is already lexicographic, so a stable sort on
  // frequency alone yields the tie rule.
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  if (ranked.size() > cap) ranked.resize(cap);

  std::vector<std::string> terms;
  std::vector<std::uint64_t> freqs;
  terms.reserve(ranked.size());
  freqs.reserve(ranked.size());
  for (auto& [term, f] : ranked) {
    terms.push_back(std::move(term));
    freqs.push_back(f);
  }
  return Vocabulary(std::move(terms), std::move(freqs), cap);
}

}  // namespace corpus_scope::text
