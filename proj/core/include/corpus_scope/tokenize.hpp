#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace corpus_scope::text {

/// Splits UTF-8 text into lowercase words. A word is a maximal run of letters
/// (Latin, Greek, Cyrillic, Hebrew, Arabic, CJK, Hangul, combining marks) and
/// ASCII digits; everything else, including hyphens and apostrophes, separates
/// words. Malformed UTF-8 bytes act as separators.
std::vector<std::string> segment_words(std::string_view text);

/// segment_words() minus tokens made only of digits.
std::vector<std::string> tokenize(std::string_view text);

/// Simple (one-to-one) lowercase mapping for the scripts listed above.
std::string to_lower(std::string_view text);

bool is_valid_utf8(std::string_view text);

}  // namespace corpus_scope::text
