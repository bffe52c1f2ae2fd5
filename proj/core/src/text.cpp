#include "cascade/text.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <sstream>

namespace cascade {

namespace {

// Blocks stripped by normalize_text. Mirrored in
// core/data/unicode/symbol_blocks.tsv (kept in sync by a unit test).
constexpr std::array<CodepointRange, 24> kStrippedBlocks{{
    {0x00A1, 0x00BF},    // latin-1 punctuation and symbols
    {0x2000, 0x206F},    // general punctuation (dashes, ZW marks, bullets)
    {0x20A0, 0x20CF},    // currency symbols
    {0x2100, 0x214F},    // letterlike symbols
    {0x2190, 0x21FF},    // arrows
    {0x2300, 0x23FF},    // miscellaneous technical
    {0x2460, 0x24FF},    // enclosed alphanumerics
    {0x2500, 0x257F},    // box drawing
    {0x2580, 0x259F},    // block elements
    {0x25A0, 0x25FF},    // geometric shapes
    {0x2600, 0x26FF},    // miscellaneous symbols
    {0x2700, 0x27BF},    // dingbats
    {0x2B00, 0x2BFF},    // miscellaneous symbols and arrows
    {0x3000, 0x303F},    // CJK symbols and punctuation
    {0xFE00, 0xFE0F},    // variation selectors
    {0x1F000, 0x1F0FF},  // mahjong/domino/playing-card tiles
    {0x1F100, 0x1F1FF},  // enclosed alphanumeric supplement, flags
    {0x1F300, 0x1F5FF},  // miscellaneous symbols and pictographs
    {0x1F600, 0x1F64F},  // emoticons
    {0x1F680, 0x1F6FF},  // transport and map symbols
    {0x1F700, 0x1F77F},  // alchemical symbols
    {0x1F900, 0x1F9FF},  // supplemental symbols and pictographs
    {0x1FA70, 0x1FAFF},  // symbols and pictographs extended-A
    {0x1FB00, 0x1FBFF},  // legacy computing symbols
}};

bool is_unicode_space(char32_t cp) {
  switch (cp) {
    case 0x09:
    case 0x0A:
    case 0x0B:
    case 0x0C:
    case 0x0D:
    case 0x20:
    case 0x85:
    case 0xA0:
    case 0x1680:
    case 0x202F:
    case 0x205F:
    case 0x3000:
      return true;
    default:
      return (cp >= 0x2000 && cp <= 0x200A) || cp == 0x2028 || cp == 0x2029;
  }
}

// Sentence punctuation kept by normalize_text.
bool is_kept_ascii_punct(char32_t cp) {
  switch (cp) {
    case '!':
    case '"':
    case '\'':
    case '(':
    case ')':
    case ',':
    case '-':
    case '.':
    case '/':
    case ':':
    case ';':
    case '?':
      return true;
    default:
      return false;
  }
}

bool is_word_cp(char32_t cp) {
  if (cp < 0x80) {
    return (cp >= '0' && cp <= '9') || (cp >= 'a' && cp <= 'z') ||
           (cp >= 'A' && cp <= 'Z') || cp == '_';
  }
  return !is_unicode_space(cp) && !is_stripped_symbol(cp);
}

}  // namespace

std::u32string utf8_decode(std::string_view text) {
  std::u32string out;
  out.reserve(text.size());
  std::size_t i = 0;
  const auto n = text.size();
  while (i < n) {
    const auto b0 = static_cast<unsigned char>(text[i]);
    if (b0 < 0x80) {
      out.push_back(b0);
      ++i;
      continue;
    }
    int len = 0;
    char32_t cp = 0;
    if ((b0 & 0xE0) == 0xC0) {
      len = 2;
      cp = b0 & 0x1F;
    } else if ((b0 & 0xF0) == 0xE0) {
      len = 3;
      cp = b0 & 0x0F;
    } else if ((b0 & 0xF8) == 0xF0) {
      len = 4;
      cp = b0 & 0x07;
    } else {
      ++i;  // stray continuation or invalid lead byte
      continue;
    }
    if (i + len > n) {
      ++i;
      continue;
    }
    bool ok = true;
    for (int k = 1; k < len; ++k) {
      const auto b = static_cast<unsigned char>(text[i + k]);
      if ((b & 0xC0) != 0x80) {
        ok = false;
        break;
      }
      cp = (cp << 6) | (b & 0x3F);
    }
    if (!ok || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
      ++i;
      continue;
    }
    // Reject overlong encodings.
    if ((len == 2 && cp < 0x80) || (len == 3 && cp < 0x800) ||
        (len == 4 && cp < 0x10000)) {
      ++i;
      continue;
    }
    out.push_back(cp);
    i += len;
  }
  return out;
}

std::string utf8_encode(std::u32string_view codepoints) {
  std::string out;
  out.reserve(codepoints.size());
  for (char32_t cp : codepoints) {
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
  return out;
}

std::size_t codepoint_count(std::string_view text) {
  return utf8_decode(text).size();
}

std::span<const CodepointRange> stripped_symbol_blocks() {
  return kStrippedBlocks;
}

std::vector<CodepointRange> load_symbol_blocks(std::istream& in) {
  std::vector<CodepointRange> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto fields = split(line, '\t');
    if (fields.size() < 2) continue;
    out.push_back({static_cast<char32_t>(std::stoul(fields[0], nullptr, 16)),
                   static_cast<char32_t>(std::stoul(fields[1], nullptr, 16))});
  }
  return out;
}

bool is_stripped_symbol(char32_t cp) {
  for (const auto& r : kStrippedBlocks) {
    if (cp >= r.first && cp <= r.last) return true;
  }
  return false;
}

std::string normalize_text(std::string_view text) {
  const std::u32string cps = utf8_decode(text);
  std::u32string out;
  out.reserve(cps.size());
  bool pending_space = false;
  for (char32_t cp : cps) {
    if (is_unicode_space(cp)) {
      pending_space = !out.empty();
      continue;
    }
    if (cp < 0x20 || cp == 0x7F || (cp >= 0x80 && cp <= 0x9F)) continue;
    if (cp < 0x80 && !is_kept_ascii_punct(cp) &&
        !((cp >= '0' && cp <= '9') || (cp >= 'a' && cp <= 'z') ||
          (cp >= 'A' && cp <= 'Z') || cp == ' ')) {
      continue;
    }
    if (cp >= 0x80 && is_stripped_symbol(cp)) continue;
    if (pending_space) {
      out.push_back(U' ');
      pending_space = false;
    }
    out.push_back(cp);
  }
  return utf8_encode(out);
}

std::string casefold(std::string_view text) {
  std::string out(text);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

std::vector<RawToken> tokenize(std::string_view text) {
  const std::u32string cps = utf8_decode(text);
  std::vector<RawToken> out;
  std::u32string current;
  bool current_word = false;
  auto flush = [&] {
    if (!current.empty()) {
      out.push_back({utf8_encode(current), current_word});
      current.clear();
    }
  };
  for (char32_t cp : cps) {
    if (is_unicode_space(cp) || cp < 0x20 || cp == 0x7F) {
      flush();
      continue;
    }
    const bool word = is_word_cp(cp);
    if (current.empty() || word != current_word) {
      flush();
      current_word = word;
    }
    current.push_back(cp);
  }
  flush();
  return out;
}

std::vector<std::string> word_tokens(std::string_view text) {
  std::vector<std::string> out;
  for (auto& tok : tokenize(text)) {
    if (tok.is_word) out.push_back(casefold(tok.text));
  }
  return out;
}

std::string strip_urls(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  std::size_t i = 0;
  const auto starts_with = [&](std::string_view prefix) {
    if (i + prefix.size() > text.size()) return false;
    for (std::size_t k = 0; k < prefix.size(); ++k) {
      if (std::tolower(static_cast<unsigned char>(text[i + k])) != prefix[k]) {
        return false;
      }
    }
    return true;
  };
  while (i < text.size()) {
    if (starts_with("http://") || starts_with("https://") ||
        starts_with("www.")) {
      while (i < text.size() &&
             !std::isspace(static_cast<unsigned char>(text[i]))) {
        ++i;
      }
      continue;
    }
    out.push_back(text[i]);
    ++i;
  }
  return out;
}

std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : data) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string to_hex(std::uint64_t value) {
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = digits[value & 0xF];
    value >>= 4;
  }
  return out;
}

std::optional<std::vector<std::string>> CsvReader::next() {
  std::string line;
  while (std::getline(in_, line)) {
    ++line_;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    record_line_ = line_;

    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    std::size_t i = 0;
    while (true) {
      if (i >= line.size()) {
        if (quoted) {
          // Quoted field spans a newline; pull the next physical line.
          if (!std::getline(in_, line)) break;
          ++line_;
          if (!line.empty() && line.back() == '\r') line.pop_back();
          field.push_back('\n');
          i = 0;
          continue;
        }
        break;
      }
      const char c = line[i];
      if (quoted) {
        if (c == '"') {
          if (i + 1 < line.size() && line[i + 1] == '"') {
            field.push_back('"');
            i += 2;
          } else {
            quoted = false;
            ++i;
          }
        } else {
          field.push_back(c);
          ++i;
        }
      } else if (c == '"' && field.empty()) {
        quoted = true;
        ++i;
      } else if (c == ',') {
        fields.push_back(std::move(field));
        field.clear();
        ++i;
      } else {
        field.push_back(c);
        ++i;
      }
    }
    fields.push_back(std::move(field));
    return fields;
  }
  return std::nullopt;
}

std::string csv_field(std::string_view value) {
  const bool needs_quotes =
      value.find_first_of(",\"\n\r") != std::string_view::npos;
  if (!needs_quotes) return std::string(value);
  std::string out = "\"";
  for (char c : value) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string csv_join(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out.push_back(',');
    out += csv_field(fields[i]);
  }
  return out;
}

std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    if (pos == std::string_view::npos) {
      out.emplace_back(text.substr(start));
      return out;
    }
    out.emplace_back(text.substr(start, pos - start));
    start = pos + 1;
  }
}

}  // namespace cascade
