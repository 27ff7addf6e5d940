#include "corpus_scope/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "corpus_scope/csv.hpp"
#include "corpus_scope/error.hpp"
#include "corpus_scope/tokenize.hpp"

namespace corpus_scope::ingest {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string> split_list(std::string_view s) {
  std::vector<std::string> items;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    std::size_t end = s.find(';', pos);
    if (end == std::string_view::npos) end = s.size();
    auto item = trim(s.substr(pos, end - pos));
    if (!item.empty()) items.emplace_back(item);
    pos = end + 1;
  }
  return items;
}

std::string join_list(const std::vector<std::string>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i > 0) out += "; ";
    out += items[i];
  }
  return out;
}

// Empty string means "no year"; nullopt result with an error means unparseable.
struct YearParse {
  std::optional<int> year;
  std::string error;
};

YearParse parse_year(std::string_view raw) {
  raw = trim(raw);
  if (raw.empty()) return {};
  int value = 0;
  auto [ptr, ec] = std::from_chars(raw.data(), raw.data() + raw.size(), value);
  if (ec != std::errc{} || ptr != raw.data() + raw.size()) return {std::nullopt, "unparseable year"};
  if (value < kMinYear || value > kMaxYear) return {std::nullopt, "year out of range"};
  return {value, {}};
}

class Assembler {
 public:
  // Rejects empty and repeated ids; the first occurrence of an id wins.
  void add(std::size_t row, Document doc) {
    if (doc.id.empty()) {
      errors_.push_back({row, "missing id"});
      return;
    }
    if (!seen_.insert(doc.id).second) {
      errors_.push_back({row, "duplicate id " + doc.id});
      return;
    }
    docs_.push_back(std::move(doc));
  }
  void reject(std::size_t row, std::string reason) { errors_.push_back({row, std::move(reason)}); }

  ParseResult finish(std::string provenance) {
    return ParseResult{Corpus(std::move(docs_), std::move(provenance)), std::move(errors_)};
  }

 private:
  std::vector<Document> docs_;
  std::vector<RecordError> errors_;
  std::set<std::string, std::less<>> seen_;
};

ParseResult parse_csv(std::string_view input, const std::string& source) {
  auto records = csv::parse(input);
  if (records.empty()) throw SchemaError("CSV input has no header row");

  std::map<std::string, std::size_t> columns;
  for (std::size_t c = 0; c < records.front().fields.size(); ++c) {
    columns.emplace(ascii_lower(trim(records.front().fields[c])), c);
  }
  for (const char* required : {"id", "title", "year"}) {
    if (!columns.contains(required)) {
      throw SchemaError(fmt::format("CSV header is missing required column '{}'", required));
    }
  }
  auto column = [&](const char* name) -> std::optional<std::size_t> {
    auto it = columns.find(name);
    if (it == columns.end()) return std::nullopt;
    return it->second;
  };
  const auto c_id = column("id");
  const auto c_title = column("title");
  const auto c_abstract = column("abstract");
  const auto c_keywords = column("keywords");
  const auto c_year = column("year");
  const auto c_type = column("doc_type");
  const auto c_countries = column("countries");
  const std::size_t width = records.front().fields.size();

  Assembler out;
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& rec = records[r];
    const std::size_t row = r;
    if (rec.unterminated_quote) {
      out.reject(row, "unterminated quoted field");
      continue;
    }
    if (rec.fields.size() != width) {
      out.reject(row, fmt::format("expected {} fields, found {}", width, rec.fields.size()));
      continue;
    }
    bool utf8_ok = std::all_of(rec.fields.begin(), rec.fields.end(),
                               [](const std::string& f) { return text::is_valid_utf8(f); });
    if (!utf8_ok) {
      out.reject(row, "invalid UTF-8");
      continue;
    }
    auto get = [&](const std::optional<std::size_t>& c) -> std::string_view {
      return c ? std::string_view(rec.fields[*c]) : std::string_view{};
    };
    auto year = parse_year(get(c_year));
    if (!year.error.empty()) {
      out.reject(row, year.error);
      continue;
    }
    Document doc;
    doc.id = std::string(trim(get(c_id)));
    doc.title = std::string(get(c_title));
    doc.abstract = std::string(get(c_abstract));
    doc.keywords = split_list(get(c_keywords));
    doc.year = year.year;
    doc.doc_type = parse_doc_type(trim(get(c_type)));
    doc.countries = split_list(get(c_countries));
    out.add(row, std::move(doc));
  }
  return out.finish("csv:" + source);
}

std::vector<std::string> json_list(const nlohmann::json& v) {
  if (v.is_null()) return {};
  if (v.is_string()) return split_list(v.get<std::string>());
  if (!v.is_array()) throw std::invalid_argument("list field must be an array or string");
  std::vector<std::string> items;
  for (const auto& e : v) {
    if (!e.is_string()) throw std::invalid_argument("list entries must be strings");
    auto item = trim(e.get_ref<const std::string&>());
    if (!item.empty()) items.emplace_back(item);
  }
  return items;
}

std::string json_text(const nlohmann::json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return {};
  if (!it->is_string()) throw std::invalid_argument(fmt::format("field '{}' must be a string", key));
  return it->get<std::string>();
}

ParseResult parse_jsonl(std::string_view input, const std::string& source) {
  Assembler out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < input.size()) {
    std::size_t eol = input.find('\n', pos);
    if (eol == std::string_view::npos) eol = input.size();
    auto line = trim(input.substr(pos, eol - pos));
    pos = eol + 1;
    ++line_no;
    if (line.empty()) continue;

    nlohmann::json obj;
    try {
      obj = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error&) {
      out.reject(line_no, "invalid JSON");
      continue;
    }
    if (!obj.is_object()) {
      out.reject(line_no, "record is not a JSON object");
      continue;
    }
    try {
      Document doc;
      auto id = obj.find("id");
      if (id == obj.end() || id->is_null()) {
        out.reject(line_no, "missing id");
        continue;
      }
      doc.id = id->is_string() ? std::string(trim(id->get_ref<const std::string&>())) : id->dump();
      if (!obj.contains("title")) {
        out.reject(line_no, "missing title");
        continue;
      }
      doc.title = json_text(obj, "title");
      doc.abstract = json_text(obj, "abstract");
      doc.keywords = json_list(obj.value("keywords", nlohmann::json()));
      doc.countries = json_list(obj.value("countries", nlohmann::json()));
      doc.doc_type = parse_doc_type(json_text(obj, "doc_type"));
      auto y = obj.find("year");
      if (y != obj.end() && !y->is_null()) {
        YearParse parsed;
        if (y->is_number_integer()) {
          parsed = parse_year(fmt::format("{}", y->get<long long>()));
        } else if (y->is_string()) {
          parsed = parse_year(y->get_ref<const std::string&>());
        } else {
          parsed.error = "unparseable year";
        }
        if (!parsed.error.empty()) {
          out.reject(line_no, parsed.error);
          continue;
        }
        doc.year = parsed.year;
      }
      out.add(line_no, std::move(doc));
    } catch (const std::invalid_argument& e) {
      out.reject(line_no, e.what());
    } catch (const nlohmann::json::exception& e) {
      out.reject(line_no, e.what());
    }
  }
  return out.finish("jsonl:" + source);
}

// True when `needle` occurs as a contiguous run inside `hay`.
bool contains_run(const std::vector<std::string>& hay, const std::vector<std::string>& needle) {
  return std::search(hay.begin(), hay.end(), needle.begin(), needle.end()) != hay.end();
}

}  // namespace

Format parse_format(std::string_view name) {
  const auto key = ascii_lower(name);
  if (key == "csv") return Format::CSV;
  if (key == "jsonl" || key == "jsonlines" || key == "json-lines" || key == "ndjson") {
    return Format::JSONLines;
  }
  throw ConfigError(fmt::format("unknown input format '{}'", name));
}

ParseResult parse_records(std::string_view input, Format format, std::string source) {
  return format == Format::CSV ? parse_csv(input, source) : parse_jsonl(input, source);
}

ParseResult parse_records(std::istream& input, Format format, std::string source) {
  std::ostringstream buffer;
  buffer << input.rdbuf();
  if (input.bad()) throw IOError("failed reading " + source);
  return parse_records(buffer.str(), format, std::move(source));
}

ParseResult load_records(const std::filesystem::path& path, Format format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IOError("cannot open input file: " + path.string());
  return parse_records(in, format, path.filename().string());
}

Corpus filter_by_phrase(const Corpus& corpus, std::string_view phrase) {
  const auto needle = text::segment_words(phrase);
  if (needle.empty()) throw ConfigError("phrase filter must contain at least one word");

  std::vector<Document> kept;
  for (const auto& d : corpus.documents()) {
    bool hit = contains_run(text::segment_words(d.title), needle) ||
               contains_run(text::segment_words(d.abstract), needle);
    for (std::size_t k = 0; !hit && k < d.keywords.size(); ++k) {
      hit = contains_run(text::segment_words(d.keywords[k]), needle);
    }
    if (hit) kept.push_back(d);
  }
  return Corpus(std::move(kept), fmt::format("{}; phrase=\"{}\"", corpus.provenance(), phrase));
}

std::pair<Corpus, Corpus> partition_by_country(const Corpus& corpus, std::string_view country) {
  const auto key = text::to_lower(trim(country));
  if (key.empty()) throw ConfigError("country must be non-empty");

  std::vector<Document> members;
  std::vector<Document> rest;
  for (const auto& d : corpus.documents()) {
    bool member = std::any_of(d.countries.begin(), d.countries.end(), [&](const std::string& c) {
      return text::to_lower(trim(c)) == key;
    });
    (member ? members : rest).push_back(d);
  }
  return {Corpus(std::move(members), fmt::format("{}; country=\"{}\"", corpus.provenance(), country)),
          Corpus(std::move(rest), fmt::format("{}; country!=\"{}\"", corpus.provenance(), country))};
}

Corpus filter_by_years(const Corpus& corpus, int first, int last) {
  std::vector<Document> kept;
  for (const auto& d : corpus.documents()) {
    if (d.year && *d.year >= first && *d.year <= last) kept.push_back(d);
  }
  return Corpus(std::move(kept), fmt::format("{}; years={}-{}", corpus.provenance(), first, last));
}

std::string to_csv(const Corpus& corpus) {
  std::string out = "id,title,abstract,keywords,year,doc_type,countries\n";
  for (const auto& d : corpus.documents()) {
    const std::string year = d.year ? fmt::format("{}", *d.year) : std::string{};
    const std::string keywords = join_list(d.keywords);
    const std::string countries = join_list(d.countries);
    csv::append_row(out, {d.id, d.title, d.abstract, keywords, year, to_string(d.doc_type),
                          countries});
  }
  return out;
}

}  // namespace corpus_scope::ingest
