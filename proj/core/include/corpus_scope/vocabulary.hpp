#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "corpus_scope/document.hpp"
#include "corpus_scope/stoplist.hpp"

namespace corpus_scope::text {

struct TokenSequence {
  std::string doc_id;
  std::vector<std::string> tokens;

  friend bool operator==(const TokenSequence&, const TokenSequence&) = default;
};

/// Which document fields feed the token stream, concatenated in this order.
struct TextFields {
  bool title = true;
  bool abstract = true;
  bool keywords = true;
};

/// Tokenizes and stopword-filters every document, preserving corpus order.
std::vector<TokenSequence> build_sequences(const Corpus& corpus, const Stoplist& stoplist,
                                           TextFields fields = {}, unsigned threads = 1);

inline constexpr std::size_t kDefaultVocabularyCap = 1000;

/// Capped vocabulary ordered by descending corpus frequency, ties broken by
/// ascending term.
class Vocabulary {
 public:
  Vocabulary() = default;
  Vocabulary(std::vector<std::string> terms, std::vector<std::uint64_t> frequencies,
             std::size_t cap);

  const std::vector<std::string>& terms() const noexcept { return terms_; }
  const std::vector<std::uint64_t>& frequencies() const noexcept { return frequencies_; }
  std::size_t cap() const noexcept { return cap_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool empty() const noexcept { return terms_.empty(); }

  std::optional<std::size_t> index_of(std::string_view term) const;

 private:
  std::vector<std::string> terms_;
  std::vector<std::uint64_t> frequencies_;
  std::size_t cap_ = kDefaultVocabularyCap;
  std::unordered_map<std::string, std::size_t> index_;
};

/// Throws EmptyCorpusError when there are no sequences, ConfigError when cap == 0.
Vocabulary build_vocabulary(const std::vector<TokenSequence>& sequences,
                            std::size_t cap = kDefaultVocabularyCap);

}  // namespace corpus_scope::text
