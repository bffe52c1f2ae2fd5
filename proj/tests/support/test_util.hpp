#ifndef CASCADE_TESTS_SUPPORT_TEST_UTIL_HPP_
#define CASCADE_TESTS_SUPPORT_TEST_UTIL_HPP_

#include <filesystem>
#include <sstream>
#include <string>

#include "cascade/corpus.hpp"

namespace cascade::test {

inline std::filesystem::path data_dir() {
  return std::filesystem::path(CASCADE_TEST_DATA_DIR);
}

inline std::filesystem::path lexicon_dir() { return data_dir() / "lexicons"; }
inline std::filesystem::path lang_dir() { return data_dir() / "lang"; }

inline const LanguageDetector& detector() {
  static const LanguageDetector d = LanguageDetector::load(lang_dir());
  return d;
}

inline Dataset ingest_jsonl_string(const std::string& text) {
  std::istringstream in(text);
  auto result = ingest(in, InputFormat::jsonl);
  return std::move(result.dataset);
}

inline Post make_post(std::string id, std::string description,
                      std::int64_t timestamp = 0) {
  Post p;
  p.post_id = std::move(id);
  p.description = std::move(description);
  p.timestamp = timestamp;
  return p;
}

}  // namespace cascade::test

#endif  // CASCADE_TESTS_SUPPORT_TEST_UTIL_HPP_
