#include "corpus_scope/document.hpp"

#include <algorithm>
#include <array>
#include <utility>

#include "corpus_scope/error.hpp"

namespace corpus_scope {

std::string_view to_string(DocType type) {
  switch (type) {
    case DocType::ConferenceProceeding: return "ConferenceProceeding";
    case DocType::ResearchArticle: return "ResearchArticle";
    case DocType::BookChapter: return "BookChapter";
    case DocType::ConferenceReview: return "ConferenceReview";
    case DocType::Book: return "Book";
    case DocType::Editorial: return "Editorial";
    case DocType::Other: return "Other";
  }
  return "Other";
}

std::string ascii_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

DocType parse_doc_type(std::string_view text) {
  std::string key;
  for (char c : ascii_lower(text)) {
    if (c != ' ' && c != '_' && c != '-') key.push_back(c);
  }
  static constexpr std::array<std::pair<std::string_view, DocType>, 14> kNames{{
      {"conferenceproceeding", DocType::ConferenceProceeding},
      {"conferenceproceedings", DocType::ConferenceProceeding},
      {"conferencepaper", DocType::ConferenceProceeding},
      {"researcharticle", DocType::ResearchArticle},
      {"article", DocType::ResearchArticle},
      {"journalarticle", DocType::ResearchArticle},
      {"bookchapter", DocType::BookChapter},
      {"chapter", DocType::BookChapter},
      {"conferencereview", DocType::ConferenceReview},
      {"book", DocType::Book},
      {"editorial", DocType::Editorial},
      {"editorialmaterial", DocType::Editorial},
      {"other", DocType::Other},
      {"review", DocType::Other},
  }};
  for (const auto& [name, type] : kNames) {
    if (key == name) return type;
  }
  return DocType::Other;
}

Corpus::Corpus(std::vector<Document> documents, std::string provenance)
    : documents_(std::move(documents)), provenance_(std::move(provenance)) {
  std::sort(documents_.begin(), documents_.end(),
            [](const Document& a, const Document& b) { return a.id < b.id; });
  for (std::size_t i = 0; i < documents_.size(); ++i) {
    if (documents_[i].id.empty()) throw SchemaError("document with empty id");
    if (i > 0 && documents_[i].id == documents_[i - 1].id) {
      throw SchemaError("duplicate document id: " + documents_[i].id);
    }
  }
}

const Document* Corpus::find(std::string_view id) const {
  auto it = std::lower_bound(documents_.begin(), documents_.end(), id,
                             [](const Document& d, std::string_view key) { return d.id < key; });
  if (it == documents_.end() || it->id != id) return nullptr;
  return &*it;
}

std::vector<std::string> Corpus::missing_year_ids() const {
  std::vector<std::string> ids;
  for (const auto& d : documents_) {
    if (!d.year) ids.push_back(d.id);
  }
  return ids;
}

}  // namespace corpus_scope
