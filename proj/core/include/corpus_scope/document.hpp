#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace corpus_scope {

enum class DocType {
  ConferenceProceeding,
  ResearchArticle,
  BookChapter,
  ConferenceReview,
  Book,
  Editorial,
  Other,
};

inline constexpr DocType kAllDocTypes[] = {
    DocType::ConferenceProceeding, DocType::ResearchArticle, DocType::BookChapter,
    DocType::ConferenceReview,     DocType::Book,            DocType::Editorial,
    DocType::Other,
};

std::string_view to_string(DocType type);

/// Case-insensitive lookup that also accepts the usual export spellings
/// ("Conference Paper", "Article", "Review", ...). Unknown strings map to Other.
DocType parse_doc_type(std::string_view text);

struct Document {
  std::string id;
  std::string title;
  std::string abstract;
  std::vector<std::string> keywords;
  std::optional<int> year;  // nullopt: the record carried no year
  DocType doc_type = DocType::Other;
  std::vector<std::string> countries;

  friend bool operator==(const Document&, const Document&) = default;
};

inline constexpr int kMinYear = 1900;
inline constexpr int kMaxYear = 2100;

/// An ordered, immutable collection of documents sorted by id.
class Corpus {
 public:
  Corpus() = default;

  /// Sorts by id. Throws SchemaError on an empty or duplicated id.
  Corpus(std::vector<Document> documents, std::string provenance);

  const std::vector<Document>& documents() const noexcept { return documents_; }
  const std::string& provenance() const noexcept { return provenance_; }
  std::size_t size() const noexcept { return documents_.size(); }
  bool empty() const noexcept { return documents_.empty(); }

  const Document* find(std::string_view id) const;

  /// Ids of documents that carry no year.
  std::vector<std::string> missing_year_ids() const;

  friend bool operator==(const Corpus&, const Corpus&) = default;

 private:
  std::vector<Document> documents_;
  std::string provenance_;
};

/// ASCII case folding used for all case-insensitive metadata comparisons.
std::string ascii_lower(std::string_view s);

}  // namespace corpus_scope
