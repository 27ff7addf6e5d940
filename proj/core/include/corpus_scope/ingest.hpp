#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "corpus_scope/document.hpp"

// Reading bibliographic exports into a Corpus and selecting the analysis set.
//
// CSV schema (RFC-4180, header required, column order free):
//   id,title,abstract,keywords,year,doc_type,countries
// `id`, `title` and `year` are mandatory columns; `keywords` and `countries`
// are semicolon-separated lists. JSON-Lines records use the same field names,
// with lists given either as JSON arrays or as semicolon-separated strings.
namespace corpus_scope::ingest {

enum class Format { CSV, JSONLines };

Format parse_format(std::string_view name);

struct RecordError {
  std::size_t row = 0;  // CSV: 1-based data row (header excluded); JSONL: line number
  std::string reason;

  friend bool operator==(const RecordError&, const RecordError&) = default;
};

struct ParseResult {
  Corpus corpus;
  std::vector<RecordError> errors;
};

/// Malformed rows become RecordErrors; the rest of the input is still read.
/// Throws SchemaError when a CSV header lacks id, title or year.
ParseResult parse_records(std::string_view input, Format format,
                          std::string source = "<memory>");

/// Throws IOError when the stream cannot be read.
ParseResult parse_records(std::istream& input, Format format, std::string source = "<stream>");

/// Throws IOError when the file cannot be opened.
ParseResult load_records(const std::filesystem::path& path, Format format);

/// Keeps documents whose title, abstract or any single keyword contains the
/// phrase as a contiguous, case-insensitive word sequence.
Corpus filter_by_phrase(const Corpus& corpus, std::string_view phrase);

/// (documents affiliated with `country`, everything else). Country names are
/// compared case-insensitively after trimming.
std::pair<Corpus, Corpus> partition_by_country(const Corpus& corpus, std::string_view country);

/// Keeps documents with year in [first, last]; documents without a year are
/// dropped from the result.
Corpus filter_by_years(const Corpus& corpus, int first, int last);

/// Writes the corpus back in the CSV schema above.
std::string to_csv(const Corpus& corpus);

}  // namespace corpus_scope::ingest
