#ifndef CASCADE_FIXTURE_HPP_
#define CASCADE_FIXTURE_HPP_

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "cascade/annotation.hpp"
#include "cascade/corpus.hpp"

namespace cascade {

// Seeded synthetic corpora with manifests recording what was planted. The
// acceptance suite checks pipeline output against these manifests.

// 2,955 posts of which 273 are near-verbatim copies (case/whitespace/emoji
// jitter) of earlier posts; the 2,682 unique posts split 2,226 English /
// 416 non-English / 40 unknown (35 URL-only).
struct StatsFixture {
  Dataset dataset;
  std::size_t planted_duplicates = 0;
  std::vector<std::string> duplicate_post_ids;
  std::int64_t english_posts = 0;      // counts over the unique posts
  std::int64_t non_english_posts = 0;
  std::int64_t unknown_posts = 0;
  std::int64_t url_only_posts = 0;
  std::map<std::string, std::int64_t> language_counts;
  std::map<std::string, std::string> language_by_post;  // unique posts only
  // Planted word-count buckets of English descriptions ({0,5,10,20,30,100,
  // 1000,inf} edges).
  std::array<std::int64_t, 7> english_word_buckets{};
};

StatsFixture make_stats_fixture(std::uint64_t seed);

// 100 posts with a per-post planted language tag ("unknown" for URL-only or
// too-short descriptions).
struct LanguageFixture {
  Dataset dataset;
  std::map<std::string, std::string> language_by_post;
  std::int64_t english = 0;
  std::int64_t other = 0;
  std::int64_t unknown = 0;
};

LanguageFixture make_language_fixture(std::uint64_t seed);

// ~500 English posts with planted topic/intent signal:
//   - intent posts: whitelisted-topic vocabulary + hostile tone
//   - calm topic posts: whitelisted-topic vocabulary + measured tone
//   - bait posts: whitelisted-topic vocabulary on ground-truth noise,
//     hostile tone (stage-1 false positives by construction)
//   - noise posts: off-topic vocabulary
// Eight planted seed tags connect topic posts into the tag graph.
struct CascadeFixture {
  Dataset dataset;
  std::map<std::string, bool> topic_truth;   // every post id
  std::map<std::string, bool> intent_truth;  // every post id; implies topic
  std::vector<std::string> seed_tags;
  std::size_t intent_posts = 0;
  std::size_t calm_topic_posts = 0;
  std::size_t bait_posts = 0;
  std::size_t noise_posts = 0;
};

CascadeFixture make_cascade_fixture(std::uint64_t seed,
                                    std::size_t total = 500);

// Two-annotator labeling whose agreement tables reproduce the reference
// counts: topic (292, 24, 13, 2127) over 2,456 posts and intent
// (103, 2, 12, 175) over the 292 both-topic posts.
std::vector<AnnotationRecord> make_agreement_fixture();

std::string stats_manifest_json(const StatsFixture& fixture,
                                const std::string& config_fingerprint = "");
std::string language_manifest_json(const LanguageFixture& fixture,
                                   const std::string& config_fingerprint = "");
std::string cascade_manifest_json(const CascadeFixture& fixture,
                                  const std::string& config_fingerprint = "");

}  // namespace cascade

#endif  // CASCADE_FIXTURE_HPP_
