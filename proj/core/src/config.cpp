#include "corpus_scope/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <limits>
#include <sstream>

#include <fmt/format.h>

#include "corpus_scope/document.hpp"
#include "corpus_scope/error.hpp"

namespace corpus_scope {
namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

template <typename T>
T parse_integer(std::string_view key, std::string_view value) {
  T out{};
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc{} || ptr != value.data() + value.size() || value.empty()) {
    throw ConfigError(fmt::format("{}: '{}' is not a valid integer", key, value));
  }
  return out;
}

double parse_real(std::string_view key, std::string_view value) {
  double out = 0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc{} || ptr != value.data() + value.size() || value.empty()) {
    throw ConfigError(fmt::format("{}: '{}' is not a valid number", key, value));
  }
  return out;
}

bool parse_bool(std::string_view key, std::string_view value) {
  const auto v = ascii_lower(value);
  if (v == "true" || v == "yes" || v == "1" || v == "on") return true;
  if (v == "false" || v == "no" || v == "0" || v == "off") return false;
  throw ConfigError(fmt::format("{}: '{}' is not a boolean", key, value));
}

std::string_view format_name(ingest::Format f) {
  return f == ingest::Format::CSV ? "csv" : "jsonl";
}

}  // namespace

std::string_view to_string(Stage stage) {
  switch (stage) {
    case Stage::Ingest: return "ingest";
    case Stage::Text: return "text";
    case Stage::Eda: return "eda";
    case Stage::Lsa: return "lsa";
    case Stage::Lda: return "lda";
    case Stage::Bigrams: return "bigrams";
  }
  return "unknown";
}

Stage parse_stage(std::string_view name) {
  const auto key = ascii_lower(name);
  if (key == "ingest" || key == "corpus_ingest") return Stage::Ingest;
  if (key == "text" || key == "text_pipeline") return Stage::Text;
  if (key == "eda") return Stage::Eda;
  if (key == "lsa") return Stage::Lsa;
  if (key == "lda") return Stage::Lda;
  if (key == "bigrams") return Stage::Bigrams;
  throw ConfigError(fmt::format("unknown stage '{}'", name));
}

void PipelineConfig::validate() const {
  if (vocab_size == 0) throw ConfigError("vocabulary size must be at least 1");
  if (top_terms == 0) throw ConfigError("top_terms must be at least 1");
  if (forecast_years < 0 || forecast_years > eda::kForecastWindow) {
    throw ConfigError(fmt::format("forecast_years must lie in [0, {}]", eda::kForecastWindow));
  }
  if (dims < 1) throw ConfigError("CA dimensions must be at least 1");
  lda_config().validate();
  if (top_words == 0) throw ConfigError("top_words must be at least 1");
  if (chains < 1) throw ConfigError("LDA needs at least one chain");
  if (bigram_threshold == 0) throw ConfigError("bigram threshold must be at least 1");
  if (threads == 0) throw ConfigError("threads must be at least 1");
  if (out.empty()) throw ConfigError("output directory is empty");
}

lda::LdaConfig PipelineConfig::lda_config() const {
  lda::LdaConfig c = lda;
  c.seed = seed;
  c.burn_in = burn_in.value_or(std::min(200, c.iterations / 5));
  return c;
}

void set_option(PipelineConfig& c, std::string_view section, std::string_view key,
                std::string_view value) {
  const std::string name = fmt::format("{}.{}", section, key);
  auto unknown = [&] { throw ConfigError(fmt::format("unknown config key '{}'", name)); };

  if (section == "corpus_ingest") {
    if (key == "input") c.input = std::string(value);
    else if (key == "format") c.format = ingest::parse_format(value);
    else if (key == "phrase") c.phrase = std::string(value);
    else unknown();
  } else if (section == "text_pipeline") {
    if (key == "stoplist") c.stoplist = std::string(value);
    else if (key == "vocab_size") c.vocab_size = parse_integer<std::size_t>(name, value);
    else unknown();
  } else if (section == "eda") {
    if (key == "top_terms") c.top_terms = parse_integer<std::size_t>(name, value);
    else if (key == "forecast_years") c.forecast_years = parse_integer<int>(name, value);
    else unknown();
  } else if (section == "lsa") {
    if (key == "dims") c.dims = parse_integer<int>(name, value);
    else if (key == "labels") c.labels = parse_integer<std::size_t>(name, value);
    else unknown();
  } else if (section == "lda") {
    if (key == "topics") c.lda.k = parse_integer<int>(name, value);
    else if (key == "alpha") c.lda.alpha = parse_real(name, value);
    else if (key == "beta") c.lda.beta = parse_real(name, value);
    else if (key == "iterations") c.lda.iterations = parse_integer<int>(name, value);
    else if (key == "burn_in") c.burn_in = parse_integer<int>(name, value);
    else if (key == "average_samples") c.lda.average_samples = parse_bool(name, value);
    else if (key == "top_words") c.top_words = parse_integer<std::size_t>(name, value);
    else if (key == "chains") c.chains = parse_integer<int>(name, value);
    else unknown();
  } else if (section == "bigrams") {
    if (key == "threshold") c.bigram_threshold = parse_integer<std::uint64_t>(name, value);
    else unknown();
  } else if (section == "report_cli") {
    if (key == "country") c.country = std::string(value);
    else if (key == "out") c.out = std::string(value);
    else if (key == "seed") c.seed = parse_integer<std::uint64_t>(name, value);
    else if (key == "threads") c.threads = parse_integer<unsigned>(name, value);
    else unknown();
  } else {
    throw ConfigError(fmt::format("unknown config section '{}'", section));
  }
}

PipelineConfig parse_config(std::string_view text, PipelineConfig base) {
  std::string section;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    const std::string_view raw = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;

    const std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#' || line.front() == ';') continue;
    try {
      if (line.front() == '[') {
        if (line.back() != ']') throw ConfigError("unterminated section header");
        section = std::string(trim(line.substr(1, line.size() - 2)));
        if (section.empty()) throw ConfigError("empty section name");
        continue;
      }
      const auto eq = line.find('=');
      if (eq == std::string_view::npos) throw ConfigError("expected key = value");
      if (section.empty()) throw ConfigError("key outside of a section");
      set_option(base, section, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    } catch (const ConfigError& e) {
      throw ConfigError(fmt::format("config line {}: {}", line_no, e.what()));
    }
  }
  return base;
}

PipelineConfig load_config(const std::filesystem::path& path, PipelineConfig base) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IOError(fmt::format("cannot open config file '{}'", path.string()));
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), std::move(base));
}

std::string config_echo(const PipelineConfig& c) {
  std::string out;
  out += "[corpus_ingest]\n";
  out += fmt::format("input_name = {}\n", c.input.filename().string());
  out += fmt::format("format = {}\n", format_name(c.format));
  out += fmt::format("phrase = {}\n", c.phrase);
  out += "[text_pipeline]\n";
  out += fmt::format("stoplist = {}\n", c.stoplist.empty() ? "<default>" : c.stoplist.filename().string());
  out += fmt::format("vocab_size = {}\n", c.vocab_size);
  out += "[eda]\n";
  out += fmt::format("top_terms = {}\n", c.top_terms);
  out += fmt::format("forecast_years = {}\n", c.forecast_years);
  out += "[lsa]\n";
  out += fmt::format("dims = {}\n", c.dims);
  out += fmt::format("labels = {}\n", c.labels);
  out += "[lda]\n";
  out += fmt::format("topics = {}\n", c.lda.k);
  out += fmt::format("alpha = {}\n", c.lda.effective_alpha());
  out += fmt::format("beta = {}\n", c.lda.beta);
  out += fmt::format("iterations = {}\n", c.lda.iterations);
  out += fmt::format("burn_in = {}\n", c.lda_config().burn_in);
  out += fmt::format("average_samples = {}\n", c.lda.average_samples);
  out += fmt::format("top_words = {}\n", c.top_words);
  out += fmt::format("chains = {}\n", c.chains);
  out += "[bigrams]\n";
  out += fmt::format("threshold = {}\n", c.bigram_threshold);
  out += "[report_cli]\n";
  out += fmt::format("country = {}\n", c.country);
  out += fmt::format("seed = {}\n", c.seed);
  return out;
}

}  // namespace corpus_scope
