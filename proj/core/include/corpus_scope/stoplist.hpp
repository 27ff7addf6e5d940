#pragma once

#include <filesystem>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace corpus_scope::text {

using Stoplist = std::set<std::string, std::less<>>;

/// Parses one term per line; '#' starts a comment line, blank lines are
/// skipped and terms are lowercased.
Stoplist parse_stoplist(std::string_view text);

/// Throws IOError when the file cannot be read.
Stoplist load_stoplist(const std::filesystem::path& path);

/// Contents of the bundled data/stopwords_en.txt.
std::string_view default_stoplist_text();
const Stoplist& default_stoplist();

/// Resolves the stoplist to use: an explicit path wins, then the
/// CORPUS_SCOPE_STOPLIST environment variable, then the bundled list.
Stoplist resolve_stoplist(const std::filesystem::path& explicit_path = {});

std::vector<std::string> remove_stopwords(std::vector<std::string> tokens,
                                          const Stoplist& stoplist);

}  // namespace corpus_scope::text
