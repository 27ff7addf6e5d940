#include "corpus_scope/csv.hpp"

namespace corpus_scope::csv {

std::vector<Record> parse(std::string_view text) {
  if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);

  std::vector<Record> records;
  Record current;
  std::string field;
  bool in_quotes = false;
  bool record_has_content = false;
  std::size_t line = 1;
  current.first_line = line;

  auto end_field = [&] {
    current.fields.push_back(std::move(field));
    field.clear();
  };
  auto end_record = [&] {
    if (record_has_content) {
      end_field();
      records.push_back(std::move(current));
    }
    current = Record{};
    field.clear();
    record_has_content = false;
    current.first_line = line;
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        if (c == '\n') ++line;
        field.push_back(c);
      }
      continue;
    }
    switch (c) {
      case '"':
        in_quotes = true;
        record_has_content = true;
        break;
      case ',':
        end_field();
        record_has_content = true;
        break;
      case '\r':
        if (i + 1 < text.size() && text[i + 1] == '\n') break;
        ++line;
        end_record();
        break;
      case '\n':
        ++line;
        end_record();
        break;
      default:
        field.push_back(c);
        record_has_content = true;
    }
  }
  if (in_quotes) current.unterminated_quote = true;
  if (record_has_content || in_quotes) {
    record_has_content = true;
    end_record();
  }
  return records;
}

std::string escape(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out;
  out.reserve(field.size() + 2);
  out.push_back('"');
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

namespace {

template <typename Range>
void append_impl(std::string& out, const Range& fields) {
  bool first = true;
  for (const auto& f : fields) {
    if (!first) out.push_back(',');
    first = false;
    out += escape(f);
  }
  out.push_back('\n');
}

}  // namespace

void append_row(std::string& out, std::span<const std::string> fields) {
  append_impl(out, fields);
}

void append_row(std::string& out, std::initializer_list<std::string_view> fields) {
  append_impl(out, fields);
}

}  // namespace corpus_scope::csv
