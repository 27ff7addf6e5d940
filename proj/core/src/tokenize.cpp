#include "corpus_scope/tokenize.hpp"

#include <algorithm>
#include <cstdint>

namespace corpus_scope::text {
namespace {

constexpr char32_t kInvalid = 0xFFFD;

// Decodes one code point starting at `pos` and advances it. Overlong forms,
// surrogates and truncated sequences decode as kInvalid consuming one byte.
char32_t decode(std::string_view s, std::size_t& pos) {
  const auto b0 = static_cast<unsigned char>(s[pos]);
  if (b0 < 0x80) {
    ++pos;
    return b0;
  }
  int len = 0;
  char32_t cp = 0;
  char32_t min = 0;
  if ((b0 & 0xE0) == 0xC0) {
    len = 2;
    cp = b0 & 0x1F;
    min = 0x80;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3;
    cp = b0 & 0x0F;
    min = 0x800;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4;
    cp = b0 & 0x07;
    min = 0x10000;
  } else {
    ++pos;
    return kInvalid;
  }
  if (pos + len > s.size()) {
    ++pos;
    return kInvalid;
  }
  for (int k = 1; k < len; ++k) {
    const auto b = static_cast<unsigned char>(s[pos + k]);
    if ((b & 0xC0) != 0x80) {
      ++pos;
      return kInvalid;
    }
    cp = (cp << 6) | (b & 0x3F);
  }
  if (cp < min || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
    ++pos;
    return kInvalid;
  }
  pos += len;
  return cp;
}

void encode(char32_t cp, std::string& out) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

bool in(char32_t cp, char32_t lo, char32_t hi) { return cp >= lo && cp <= hi; }

bool is_word_char(char32_t cp) {
  if (cp < 0x80) {
    return (cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z') || (cp >= '0' && cp <= '9');
  }
  if (cp == 0xAA || cp == 0xB5 || cp == 0xBA) return true;
  if (in(cp, 0xC0, 0x24F)) return cp != 0xD7 && cp != 0xF7;
  if (in(cp, 0x250, 0x2AF)) return true;                  // IPA
  if (in(cp, 0x300, 0x36F)) return true;                  // combining marks
  if (in(cp, 0x370, 0x3FF)) return cp != 0x37E && cp != 0x387;
  if (in(cp, 0x400, 0x52F)) return !in(cp, 0x482, 0x489);  // Cyrillic
  if (in(cp, 0x5D0, 0x5EA)) return true;                  // Hebrew letters
  if (in(cp, 0x620, 0x64A) || in(cp, 0x671, 0x6D3)) return true;  // Arabic letters
  if (in(cp, 0x1E00, 0x1FFF)) return true;                // Latin/Greek extended
  if (in(cp, 0x3040, 0x30FF)) return cp != 0x30FB;        // kana
  if (in(cp, 0x4E00, 0x9FFF)) return true;                // CJK unified
  if (in(cp, 0xAC00, 0xD7AF)) return true;                // Hangul
  return false;
}

char32_t lower(char32_t cp) {
  if (cp < 0x80) return (cp >= 'A' && cp <= 'Z') ? cp + 0x20 : cp;
  if (in(cp, 0xC0, 0xDE) && cp != 0xD7) return cp + 0x20;
  if (in(cp, 0x100, 0x137) || in(cp, 0x14A, 0x177) || in(cp, 0x1E00, 0x1E95) ||
      in(cp, 0x1EA0, 0x1EFF)) {
    return (cp % 2 == 0) ? cp + 1 : cp;
  }
  if (in(cp, 0x139, 0x148) || in(cp, 0x179, 0x17E)) return (cp % 2 == 1) ? cp + 1 : cp;
  if (cp == 0x178) return 0xFF;
  if (cp == 0x386) return 0x3AC;
  if (in(cp, 0x388, 0x38A)) return cp + 37;
  if (cp == 0x38C) return 0x3CC;
  if (in(cp, 0x38E, 0x38F)) return cp + 63;
  if (in(cp, 0x391, 0x3AB) && cp != 0x3A2) return cp + 0x20;
  if (in(cp, 0x400, 0x40F)) return cp + 0x50;
  if (in(cp, 0x410, 0x42F)) return cp + 0x20;
  if (in(cp, 0x460, 0x481) || in(cp, 0x48A, 0x4BF) || in(cp, 0x4D0, 0x52F)) {
    return (cp % 2 == 0) ? cp + 1 : cp;
  }
  return cp;
}

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

}  // namespace

std::vector<std::string> segment_words(std::string_view text) {
  std::vector<std::string> words;
  std::string current;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const char32_t cp = decode(text, pos);
    if (cp != kInvalid && is_word_char(cp)) {
      encode(lower(cp), current);
    } else if (!current.empty()) {
      words.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) words.push_back(std::move(current));
  return words;
}

std::vector<std::string> tokenize(std::string_view text) {
  auto words = segment_words(text);
  std::erase_if(words, [](const std::string& w) { return all_digits(w); });
  return words;
}

std::string to_lower(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t start = pos;
    const char32_t cp = decode(text, pos);
    if (cp == kInvalid) {
      out.append(text.substr(start, pos - start));
    } else {
      encode(lower(cp), out);
    }
  }
  return out;
}

bool is_valid_utf8(std::string_view text) {
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t start = pos;
    if (decode(text, pos) == kInvalid) {
      // U+FFFD itself is valid when properly encoded.
      if (text.substr(start, 3) != "\xEF\xBF\xBD") return false;
    }
  }
  return true;
}

}  // namespace corpus_scope::text
