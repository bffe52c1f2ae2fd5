#ifndef CASCADE_CORPUS_HPP_
#define CASCADE_CORPUS_HPP_

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cascade {

enum class PostType { text, quote };

std::string_view to_string(PostType type);
std::optional<PostType> post_type_from(std::string_view name);

struct Post {
  std::string post_id;
  std::int64_t timestamp = 0;  // epoch seconds
  int gmt_offset = 0;          // minutes
  std::string blogger_id;
  std::string url;
  PostType type = PostType::text;
  std::vector<std::string> tags;
  int num_tags = 0;
  std::int64_t notes = 0;  // reblog + like count
  std::optional<std::string> reblogged_from;
  std::optional<std::string> title;
  std::string description;

  friend bool operator==(const Post&, const Post&) = default;
};

struct Blogger {
  std::string blogger_id;
  bool ask = false;
  bool ask_anon = false;
  std::int64_t like_count = 0;
  std::int64_t post_count = 0;
  std::optional<std::string> title;
  std::optional<std::string> description;

  friend bool operator==(const Blogger&, const Blogger&) = default;
};

struct Dataset {
  std::vector<Post> posts;
  std::map<std::string, Blogger> bloggers;

  // Posts whose blogger_id does not resolve. Orphans are permitted.
  std::size_t orphan_count() const;
  const Post* find_post(std::string_view post_id) const;

  friend bool operator==(const Dataset&, const Dataset&) = default;
};

// Word-count histogram with fixed bucket edges {0,5,10,20,30,100,1000,inf}.
struct Histogram {
  static constexpr std::array<int, 7> kEdges{0, 5, 10, 20, 30, 100, 1000};
  std::array<std::int64_t, 7> counts{};

  static std::size_t bucket_of(std::size_t words);
  void add(std::size_t words) { ++counts[bucket_of(words)]; }
  std::int64_t total() const;

  friend bool operator==(const Histogram&, const Histogram&) = default;
};

struct CorpusStats {
  std::int64_t total_posts = 0;
  std::int64_t english_posts = 0;
  std::int64_t non_english_posts = 0;
  std::int64_t unknown_language_posts = 0;
  std::int64_t url_only_posts = 0;
  Histogram description_words;
  Histogram tag_words;  // over unique (case-folded) tags

  friend bool operator==(const CorpusStats&, const CorpusStats&) = default;
};

// --- Ingestion -------------------------------------------------------------

enum class InputFormat { jsonl, csv };

struct Reject {
  std::size_t line_number = 0;
  std::string reason;

  friend bool operator==(const Reject&, const Reject&) = default;
};

struct IngestResult {
  Dataset dataset;
  std::vector<Reject> rejects;
};

// Reads post records. Malformed records land in `rejects` with a reason
// code; a duplicate post_id rejects the second occurrence. Throws
// std::runtime_error if the stream itself fails.
IngestResult ingest(std::istream& in, InputFormat format);

// Reads blogger records into an existing dataset. Duplicate blogger_ids
// reject the second occurrence.
std::vector<Reject> ingest_bloggers(std::istream& in, InputFormat format,
                                    Dataset& dataset);

void write_posts_jsonl(const Dataset& dataset, std::ostream& out);
void write_posts_csv(const Dataset& dataset, std::ostream& out);
void write_bloggers_jsonl(const Dataset& dataset, std::ostream& out);
void write_rejects_jsonl(const std::vector<Reject>& rejects, std::ostream& out);

// --- Corpus operations -----------------------------------------------------

// Hash key used for duplicate detection: case-folded normalized description.
std::uint64_t description_hash(const Post& post);

struct DedupResult {
  Dataset dataset;
  std::size_t removed_count = 0;
};

// Posts with colliding description hashes keep only the earliest timestamp
// (ties: lexicographically smallest post_id). Idempotent.
DedupResult deduplicate(const Dataset& dataset);

// --- Language detection ----------------------------------------------------

// Ranked character-trigram profile of `text`, most frequent first
// (ties broken lexicographically). Tokens are padded with '_' so word
// boundaries contribute.
std::vector<std::string> trigram_profile(std::string_view text,
                                         std::size_t max_size = 300);

// Rank-order trigram matcher over bundled language profiles.
class LanguageDetector {
 public:
  struct Guess {
    enum class Kind { english, other, unknown };
    Kind kind = Kind::unknown;
    std::string tag = "unknown";  // profile name when kind != unknown

    friend bool operator==(const Guess&, const Guess&) = default;
  };

  // Loads every <tag>.tsv profile in `profile_dir` (one trigram per line,
  // rank order). Requires an "en" profile.
  static LanguageDetector load(const std::filesystem::path& profile_dir);
  static LanguageDetector from_profiles(
      std::map<std::string, std::vector<std::string>> profiles);

  // Returns unknown when the text (URLs removed) has fewer than
  // min_tokens alphabetic tokens.
  Guess detect(std::string_view text) const;

  int min_tokens() const { return min_tokens_; }
  void set_min_tokens(int n) { min_tokens_ = n; }
  std::vector<std::string> tags() const;

 private:
  LanguageDetector() = default;
  std::map<std::string, std::map<std::string, std::size_t>> rank_by_tag_;
  std::size_t profile_size_ = 300;
  int min_tokens_ = 3;
};

struct FilterResult {
  Dataset dataset;  // english posts only
  CorpusStats stats;  // partition of the full input
};

// Retains posts detected as English. Histograms in the returned stats cover
// the full input; run compute_stats on the result for English-only numbers.
FilterResult filter_english(const Dataset& dataset,
                            const LanguageDetector& detector);

// Word-length histograms over normalized descriptions and unique tags,
// plus the URL-only count.
CorpusStats compute_stats(const Dataset& dataset);

// True when the description contains at least one URL and nothing else.
bool is_url_only(std::string_view description);

}  // namespace cascade

#endif  // CASCADE_CORPUS_HPP_
