#include "corpus_scope/stoplist.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "corpus_scope/error.hpp"
#include "corpus_scope/tokenize.hpp"

namespace corpus_scope::text {

Stoplist parse_stoplist(std::string_view text) {
  Stoplist terms;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t')) {
      line.remove_suffix(1);
    }
    while (!line.empty() && (line.front() == ' ' || line.front() == '\t')) line.remove_prefix(1);
    if (line.empty() || line.front() == '#') continue;
    terms.insert(to_lower(line));
  }
  return terms;
}

Stoplist load_stoplist(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IOError("cannot open stoplist: " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IOError("cannot read stoplist: " + path.string());
  return parse_stoplist(buffer.str());
}

const Stoplist& default_stoplist() {
  static const Stoplist list = parse_stoplist(default_stoplist_text());
  return list;
}

Stoplist resolve_stoplist(const std::filesystem::path& explicit_path) {
  if (!explicit_path.empty()) return load_stoplist(explicit_path);
  if (const char* env = std::getenv("CORPUS_SCOPE_STOPLIST"); env != nullptr && *env != '\0') {
    return load_stoplist(env);
  }
  return default_stoplist();
}

std::vector<std::string> remove_stopwords(std::vector<std::string> tokens,
                                          const Stoplist& stoplist) {
  std::erase_if(tokens, [&](const std::string& t) { return stoplist.contains(t); });
  return tokens;
}

}  // namespace corpus_scope::text
