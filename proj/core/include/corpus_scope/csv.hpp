#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

// Minimal RFC-4180 reading and writing. Fields may contain quoted commas,
// doubled quotes and embedded line breaks.
namespace corpus_scope::csv {

struct Record {
  std::size_t first_line = 0;  // 1-based physical line where the record starts
  std::vector<std::string> fields;
  bool unterminated_quote = false;
};

/// Splits `text` into records. A leading UTF-8 BOM is skipped, CRLF and LF
/// line endings are both accepted, and blank lines are ignored.
std::vector<Record> parse(std::string_view text);

/// Quotes a field only when it contains a comma, quote, CR or LF.
std::string escape(std::string_view field);

void append_row(std::string& out, std::span<const std::string> fields);
void append_row(std::string& out, std::initializer_list<std::string_view> fields);

}  // namespace corpus_scope::csv
