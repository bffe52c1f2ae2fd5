#ifndef CASCADE_TEXT_HPP_
#define CASCADE_TEXT_HPP_

#include <cstdint>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cascade {

// --- UTF-8 ---------------------------------------------------------------

// Decodes UTF-8 into codepoints. Invalid byte sequences are skipped so the
// result is always well-formed.
std::u32string utf8_decode(std::string_view text);
std::string utf8_encode(std::u32string_view codepoints);
std::size_t codepoint_count(std::string_view text);

// --- Noise stripping -----------------------------------------------------

struct CodepointRange {
  char32_t first;
  char32_t last;
  friend bool operator==(const CodepointRange&, const CodepointRange&) = default;
};

// Emoticon/symbol codepoint blocks removed by normalize_text. The same table
// ships as core/data/unicode/symbol_blocks.tsv so the rule is auditable; a
// unit test keeps file and table in sync.
std::span<const CodepointRange> stripped_symbol_blocks();
std::vector<CodepointRange> load_symbol_blocks(std::istream& in);
bool is_stripped_symbol(char32_t cp);

// Removes characters outside letters/digits/basic punctuation, strips
// emoticon/symbol blocks, collapses whitespace runs to single spaces and
// trims. Idempotent; never grows the codepoint count.
std::string normalize_text(std::string_view text);

// ASCII-only case folding; non-ASCII codepoints pass through.
std::string casefold(std::string_view text);

// --- Tokenization --------------------------------------------------------

struct RawToken {
  std::string text;
  bool is_word = false;
  friend bool operator==(const RawToken&, const RawToken&) = default;
};

// Splits on whitespace and punctuation boundaries. Word tokens are runs of
// letters/digits/underscore (non-ASCII codepoints count as letters);
// punctuation runs become non-word tokens; whitespace separates only.
std::vector<RawToken> tokenize(std::string_view text);

// Casefolded word tokens of tokenize(); the token stream every lexicon
// scorer operates on.
std::vector<std::string> word_tokens(std::string_view text);

// Removes http(s)://... and www.... spans.
std::string strip_urls(std::string_view text);

// --- Hashing -------------------------------------------------------------

std::uint64_t fnv1a64(std::string_view data);
std::string to_hex(std::uint64_t value);

// --- CSV (RFC 4180 quoting, multi-line fields supported) ------------------

class CsvReader {
 public:
  explicit CsvReader(std::istream& in) : in_(in) {}

  // Next record, or nullopt at end of stream. Blank lines are skipped.
  std::optional<std::vector<std::string>> next();

  // 1-based line number where the last returned record started.
  std::size_t record_line() const { return record_line_; }

 private:
  std::istream& in_;
  std::size_t line_ = 0;
  std::size_t record_line_ = 0;
};

std::string csv_field(std::string_view value);
std::string csv_join(const std::vector<std::string>& fields);

std::vector<std::string> split(std::string_view text, char sep);

}  // namespace cascade

#endif  // CASCADE_TEXT_HPP_
