#include "cascade/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "cascade/text.hpp"
#include "json.hpp"

namespace cascade {

namespace {

using ordered_json = nlohmann::ordered_json;

const std::vector<std::string> kPostHeader = {
    "post_id", "timestamp", "gmt",       "blogger",        "url",   "type",
    "tags",    "num_tags",  "notes",     "reblogged_from", "title",
    "description"};

const std::vector<std::string> kBloggerHeader = {
    "blogger_id", "ask",   "ask_anon",   "like_count",
    "post_count", "title", "description"};

struct FieldError {
  std::string reason;
};

std::string get_string(const ordered_json& j, const char* key,
                       bool* present = nullptr) {
  if (!j.contains(key) || j[key].is_null()) {
    if (present) *present = false;
    return {};
  }
  if (!j[key].is_string()) throw FieldError{std::string("invalid ") + key};
  if (present) *present = true;
  return j[key].get<std::string>();
}

std::int64_t get_int(const ordered_json& j, const char* key,
                     std::int64_t fallback) {
  if (!j.contains(key) || j[key].is_null()) return fallback;
  if (!j[key].is_number_integer())
    throw FieldError{std::string("invalid ") + key};
  return j[key].get<std::int64_t>();
}

std::optional<std::string> get_optional(const ordered_json& j,
                                        const char* key) {
  bool present = false;
  std::string value = get_string(j, key, &present);
  if (!present) return std::nullopt;
  return value;
}

Post post_from_json(const ordered_json& j) {
  Post p;
  bool present = false;
  p.post_id = get_string(j, "post_id", &present);
  if (!present || p.post_id.empty()) throw FieldError{"missing post_id"};
  if (!j.contains("description") || !j["description"].is_string())
    throw FieldError{"missing description"};
  p.description = j["description"].get<std::string>();

  p.timestamp = get_int(j, "timestamp", 0);
  p.gmt_offset = static_cast<int>(get_int(j, "gmt", 0));
  p.blogger_id = get_string(j, "blogger");
  p.url = get_string(j, "url");

  const std::string type = get_string(j, "type", &present);
  if (present) {
    const auto parsed = post_type_from(type);
    if (!parsed) throw FieldError{"invalid post type"};
    p.type = *parsed;
  }

  if (j.contains("tags") && !j["tags"].is_null()) {
    if (!j["tags"].is_array()) throw FieldError{"invalid tags"};
    for (const auto& t : j["tags"]) {
      if (!t.is_string()) throw FieldError{"invalid tags"};
      p.tags.push_back(t.get<std::string>());
    }
  }
  if (j.contains("num_tags") && !j["num_tags"].is_null()) {
    p.num_tags = static_cast<int>(get_int(j, "num_tags", 0));
    if (p.num_tags != static_cast<int>(p.tags.size()))
      throw FieldError{"tag count mismatch"};
  } else {
    p.num_tags = static_cast<int>(p.tags.size());
  }

  p.notes = get_int(j, "notes", 0);
  if (p.notes < 0) throw FieldError{"negative notes"};
  p.reblogged_from = get_optional(j, "reblogged_from");
  p.title = get_optional(j, "title");
  return p;
}

std::int64_t parse_int_field(const std::string& s, const char* what) {
  if (s.empty()) return 0;
  try {
    std::size_t used = 0;
    const std::int64_t v = std::stoll(s, &used);
    if (used != s.size()) throw FieldError{std::string("invalid ") + what};
    return v;
  } catch (const FieldError&) {
    throw;
  } catch (...) {
    throw FieldError{std::string("invalid ") + what};
  }
}

Post post_from_csv(const std::vector<std::string>& f) {
  if (f.size() != kPostHeader.size()) throw FieldError{"wrong field count"};
  Post p;
  p.post_id = f[0];
  if (p.post_id.empty()) throw FieldError{"missing post_id"};
  p.timestamp = parse_int_field(f[1], "timestamp");
  p.gmt_offset = static_cast<int>(parse_int_field(f[2], "gmt"));
  p.blogger_id = f[3];
  p.url = f[4];
  if (!f[5].empty()) {
    const auto parsed = post_type_from(f[5]);
    if (!parsed) throw FieldError{"invalid post type"};
    p.type = *parsed;
  }
  if (!f[6].empty()) {
    for (auto& tag : split(f[6], ';')) p.tags.push_back(tag);
  }
  if (!f[7].empty()) {
    p.num_tags = static_cast<int>(parse_int_field(f[7], "num_tags"));
    if (p.num_tags != static_cast<int>(p.tags.size()))
      throw FieldError{"tag count mismatch"};
  } else {
    p.num_tags = static_cast<int>(p.tags.size());
  }
  p.notes = parse_int_field(f[8], "notes");
  if (p.notes < 0) throw FieldError{"negative notes"};
  if (!f[9].empty()) p.reblogged_from = f[9];
  if (!f[10].empty()) p.title = f[10];
  p.description = f[11];
  return p;
}

Blogger blogger_from_json(const ordered_json& j) {
  Blogger b;
  bool present = false;
  b.blogger_id = get_string(j, "blogger_id", &present);
  if (!present || b.blogger_id.empty()) throw FieldError{"missing blogger_id"};
  if (j.contains("ask") && j["ask"].is_boolean()) b.ask = j["ask"];
  if (j.contains("ask_anon") && j["ask_anon"].is_boolean())
    b.ask_anon = j["ask_anon"];
  b.like_count = get_int(j, "like_count", 0);
  b.post_count = get_int(j, "post_count", 0);
  b.title = get_optional(j, "title");
  b.description = get_optional(j, "description");
  return b;
}

Blogger blogger_from_csv(const std::vector<std::string>& f) {
  if (f.size() != kBloggerHeader.size()) throw FieldError{"wrong field count"};
  Blogger b;
  b.blogger_id = f[0];
  if (b.blogger_id.empty()) throw FieldError{"missing blogger_id"};
  b.ask = f[1] == "true" || f[1] == "1";
  b.ask_anon = f[2] == "true" || f[2] == "1";
  b.like_count = parse_int_field(f[3], "like_count");
  b.post_count = parse_int_field(f[4], "post_count");
  if (!f[5].empty()) b.title = f[5];
  if (!f[6].empty()) b.description = f[6];
  return b;
}

ordered_json post_to_json(const Post& p) {
  ordered_json j;
  j["post_id"] = p.post_id;
  j["timestamp"] = p.timestamp;
  j["gmt"] = p.gmt_offset;
  j["blogger"] = p.blogger_id;
  j["url"] = p.url;
  j["type"] = std::string(to_string(p.type));
  j["tags"] = p.tags;
  j["num_tags"] = p.num_tags;
  j["notes"] = p.notes;
  j["reblogged_from"] =
      p.reblogged_from ? ordered_json(*p.reblogged_from) : ordered_json();
  j["title"] = p.title ? ordered_json(*p.title) : ordered_json();
  j["description"] = p.description;
  return j;
}

// Alphabetic tokens feeding the trigram profiles; digit-bearing tokens are
// not language evidence.
std::vector<std::string> alphabetic_tokens(std::string_view text) {
  std::vector<std::string> out;
  for (auto& tok : word_tokens(strip_urls(text))) {
    const bool has_digit = std::any_of(tok.begin(), tok.end(), [](char c) {
      return c >= '0' && c <= '9';
    });
    if (!has_digit && !tok.empty()) out.push_back(tok);
  }
  return out;
}

}  // namespace

std::string_view to_string(PostType type) {
  return type == PostType::text ? "text" : "quote";
}

std::optional<PostType> post_type_from(std::string_view name) {
  if (name == "text") return PostType::text;
  if (name == "quote") return PostType::quote;
  return std::nullopt;
}

std::size_t Dataset::orphan_count() const {
  std::size_t n = 0;
  for (const auto& p : posts) {
    if (!p.blogger_id.empty() && !bloggers.contains(p.blogger_id)) ++n;
  }
  return n;
}

const Post* Dataset::find_post(std::string_view post_id) const {
  for (const auto& p : posts) {
    if (p.post_id == post_id) return &p;
  }
  return nullptr;
}

std::size_t Histogram::bucket_of(std::size_t words) {
  for (std::size_t i = kEdges.size() - 1; i > 0; --i) {
    if (words >= static_cast<std::size_t>(kEdges[i])) return i;
  }
  return 0;
}

std::int64_t Histogram::total() const {
  std::int64_t sum = 0;
  for (auto c : counts) sum += c;
  return sum;
}

IngestResult ingest(std::istream& in, InputFormat format) {
  IngestResult result;
  std::unordered_set<std::string> seen_ids;

  auto admit = [&](Post&& p, std::size_t line) {
    if (!seen_ids.insert(p.post_id).second) {
      result.rejects.push_back({line, "duplicate post_id"});
      return;
    }
    result.dataset.posts.push_back(std::move(p));
  };

  if (format == InputFormat::jsonl) {
    std::string line;
    std::size_t line_number = 0;
    while (std::getline(in, line)) {
      ++line_number;
      if (line.empty() || line.starts_with("#")) continue;
      const auto j = ordered_json::parse(line, nullptr, false);
      if (j.is_discarded() || !j.is_object()) {
        result.rejects.push_back({line_number, "invalid json"});
        continue;
      }
      try {
        admit(post_from_json(j), line_number);
      } catch (const FieldError& e) {
        result.rejects.push_back({line_number, e.reason});
      }
    }
  } else {
    CsvReader reader(in);
    auto header = reader.next();
    if (!header || *header != kPostHeader)
      throw std::runtime_error("csv post header mismatch");
    while (auto record = reader.next()) {
      try {
        admit(post_from_csv(*record), reader.record_line());
      } catch (const FieldError& e) {
        result.rejects.push_back({reader.record_line(), e.reason});
      }
    }
  }
  if (in.bad()) throw std::runtime_error("I/O error while reading posts");
  return result;
}

std::vector<Reject> ingest_bloggers(std::istream& in, InputFormat format,
                                    Dataset& dataset) {
  std::vector<Reject> rejects;
  auto admit = [&](Blogger&& b, std::size_t line) {
    if (dataset.bloggers.contains(b.blogger_id)) {
      rejects.push_back({line, "duplicate blogger_id"});
      return;
    }
    dataset.bloggers.emplace(b.blogger_id, std::move(b));
  };

  if (format == InputFormat::jsonl) {
    std::string line;
    std::size_t line_number = 0;
    while (std::getline(in, line)) {
      ++line_number;
      if (line.empty() || line.starts_with("#")) continue;
      const auto j = ordered_json::parse(line, nullptr, false);
      if (j.is_discarded() || !j.is_object()) {
        rejects.push_back({line_number, "invalid json"});
        continue;
      }
      try {
        admit(blogger_from_json(j), line_number);
      } catch (const FieldError& e) {
        rejects.push_back({line_number, e.reason});
      }
    }
  } else {
    CsvReader reader(in);
    auto header = reader.next();
    if (!header || *header != kBloggerHeader)
      throw std::runtime_error("csv blogger header mismatch");
    while (auto record = reader.next()) {
      try {
        admit(blogger_from_csv(*record), reader.record_line());
      } catch (const FieldError& e) {
        rejects.push_back({reader.record_line(), e.reason});
      }
    }
  }
  if (in.bad()) throw std::runtime_error("I/O error while reading bloggers");
  return rejects;
}

void write_posts_jsonl(const Dataset& dataset, std::ostream& out) {
  for (const auto& p : dataset.posts) out << post_to_json(p).dump() << '\n';
}

void write_posts_csv(const Dataset& dataset, std::ostream& out) {
  out << csv_join(kPostHeader) << '\n';
  for (const auto& p : dataset.posts) {
    std::string tags;
    for (std::size_t i = 0; i < p.tags.size(); ++i) {
      if (i) tags.push_back(';');
      tags += p.tags[i];
    }
    out << csv_join({p.post_id, std::to_string(p.timestamp),
                     std::to_string(p.gmt_offset), p.blogger_id, p.url,
                     std::string(to_string(p.type)), tags,
                     std::to_string(p.num_tags), std::to_string(p.notes),
                     p.reblogged_from.value_or(""), p.title.value_or(""),
                     p.description})
        << '\n';
  }
}

void write_bloggers_jsonl(const Dataset& dataset, std::ostream& out) {
  for (const auto& [id, b] : dataset.bloggers) {
    ordered_json j;
    j["blogger_id"] = b.blogger_id;
    j["ask"] = b.ask;
    j["ask_anon"] = b.ask_anon;
    j["like_count"] = b.like_count;
    j["post_count"] = b.post_count;
    j["title"] = b.title ? ordered_json(*b.title) : ordered_json();
    j["description"] =
        b.description ? ordered_json(*b.description) : ordered_json();
    out << j.dump() << '\n';
  }
}

void write_rejects_jsonl(const std::vector<Reject>& rejects,
                         std::ostream& out) {
  for (const auto& r : rejects) {
    ordered_json j;
    j["line_number"] = r.line_number;
    j["reason"] = r.reason;
    out << j.dump() << '\n';
  }
}

std::uint64_t description_hash(const Post& post) {
  return fnv1a64(casefold(normalize_text(post.description)));
}

DedupResult deduplicate(const Dataset& dataset) {
  struct Keeper {
    std::size_t ordinal;  // group discovery order
    const Post* post;
  };
  std::unordered_map<std::uint64_t, Keeper> keepers;
  keepers.reserve(dataset.posts.size());
  std::size_t next_ordinal = 0;
  for (const auto& p : dataset.posts) {
    const std::uint64_t h = description_hash(p);
    auto [it, inserted] = keepers.try_emplace(h, Keeper{next_ordinal, &p});
    if (inserted) {
      ++next_ordinal;
      continue;
    }
    const Post* cur = it->second.post;
    if (p.timestamp < cur->timestamp ||
        (p.timestamp == cur->timestamp && p.post_id < cur->post_id)) {
      it->second.post = &p;
    }
  }

  std::vector<const Post*> kept(keepers.size());
  for (const auto& [h, k] : keepers) kept[k.ordinal] = k.post;

  DedupResult result;
  result.dataset.bloggers = dataset.bloggers;
  result.dataset.posts.reserve(kept.size());
  for (const Post* p : kept) result.dataset.posts.push_back(*p);
  result.removed_count = dataset.posts.size() - kept.size();
  return result;
}

std::vector<std::string> trigram_profile(std::string_view text,
                                         std::size_t max_size) {
  std::map<std::string, std::size_t> freq;
  for (const auto& tok : alphabetic_tokens(text)) {
    const std::u32string padded = U"_" + utf8_decode(tok) + U"_";
    if (padded.size() < 3) continue;
    for (std::size_t i = 0; i + 3 <= padded.size(); ++i) {
      ++freq[utf8_encode(padded.substr(i, 3))];
    }
  }
  std::vector<std::pair<std::string, std::size_t>> ranked(freq.begin(),
                                                          freq.end());
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& a, const auto& b) {
                     if (a.second != b.second) return a.second > b.second;
                     return a.first < b.first;
                   });
  if (ranked.size() > max_size) ranked.resize(max_size);
  std::vector<std::string> out;
  out.reserve(ranked.size());
  for (auto& [g, n] : ranked) out.push_back(g);
  return out;
}

LanguageDetector LanguageDetector::load(
    const std::filesystem::path& profile_dir) {
  std::map<std::string, std::vector<std::string>> profiles;
  if (!std::filesystem::is_directory(profile_dir)) {
    throw std::runtime_error("language profile directory not found: " +
                             profile_dir.string());
  }
  for (const auto& entry : std::filesystem::directory_iterator(profile_dir)) {
    if (entry.path().extension() != ".tsv") continue;
    std::ifstream in(entry.path());
    if (!in) {
      throw std::runtime_error("cannot read language profile: " +
                               entry.path().string());
    }
    std::vector<std::string> grams;
    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (!line.empty() && line[0] != '#') grams.push_back(line);
    }
    profiles.emplace(entry.path().stem().string(), std::move(grams));
  }
  return from_profiles(std::move(profiles));
}

LanguageDetector LanguageDetector::from_profiles(
    std::map<std::string, std::vector<std::string>> profiles) {
  if (!profiles.contains("en"))
    throw std::runtime_error("language profiles must include \"en\"");
  LanguageDetector d;
  d.profile_size_ = 0;
  for (auto& [tag, grams] : profiles) {
    std::map<std::string, std::size_t> ranks;
    for (std::size_t i = 0; i < grams.size(); ++i) ranks.emplace(grams[i], i);
    d.profile_size_ = std::max(d.profile_size_, grams.size());
    d.rank_by_tag_.emplace(tag, std::move(ranks));
  }
  if (d.profile_size_ == 0) d.profile_size_ = 300;
  return d;
}

LanguageDetector::Guess LanguageDetector::detect(std::string_view text) const {
  if (alphabetic_tokens(text).size() <
      static_cast<std::size_t>(min_tokens_)) {
    return {Guess::Kind::unknown, "unknown"};
  }
  const auto doc = trigram_profile(text);
  if (doc.empty()) return {Guess::Kind::unknown, "unknown"};

  std::string best_tag;
  std::uint64_t best_distance = 0;
  bool first = true;
  for (const auto& [tag, ranks] : rank_by_tag_) {
    std::uint64_t distance = 0;
    for (std::size_t i = 0; i < doc.size(); ++i) {
      const auto it = ranks.find(doc[i]);
      if (it == ranks.end()) {
        distance += profile_size_;
      } else {
        const auto r = it->second;
        distance += r > i ? r - i : i - r;
      }
    }
    if (first || distance < best_distance) {
      best_tag = tag;
      best_distance = distance;
      first = false;
    }
  }
  if (best_tag == "en") return {Guess::Kind::english, "en"};
  return {Guess::Kind::other, best_tag};
}

std::vector<std::string> LanguageDetector::tags() const {
  std::vector<std::string> out;
  for (const auto& [tag, ranks] : rank_by_tag_) out.push_back(tag);
  return out;
}

FilterResult filter_english(const Dataset& dataset,
                            const LanguageDetector& detector) {
  FilterResult result;
  result.stats = compute_stats(dataset);
  result.dataset.bloggers = dataset.bloggers;
  for (const auto& p : dataset.posts) {
    const auto guess = detector.detect(p.description);
    switch (guess.kind) {
      case LanguageDetector::Guess::Kind::english:
        ++result.stats.english_posts;
        result.dataset.posts.push_back(p);
        break;
      case LanguageDetector::Guess::Kind::other:
        ++result.stats.non_english_posts;
        break;
      case LanguageDetector::Guess::Kind::unknown:
        ++result.stats.unknown_language_posts;
        break;
    }
  }
  return result;
}

CorpusStats compute_stats(const Dataset& dataset) {
  CorpusStats stats;
  stats.total_posts = static_cast<std::int64_t>(dataset.posts.size());
  std::set<std::string> unique_tags;
  for (const auto& p : dataset.posts) {
    stats.description_words.add(word_tokens(normalize_text(p.description)).size());
    if (is_url_only(p.description)) ++stats.url_only_posts;
    for (const auto& tag : p.tags) {
      std::string folded = casefold(normalize_text(tag));
      if (!folded.empty()) unique_tags.insert(std::move(folded));
    }
  }
  for (const auto& tag : unique_tags) {
    stats.tag_words.add(word_tokens(tag).size());
  }
  return stats;
}

bool is_url_only(std::string_view description) {
  const std::string without = strip_urls(description);
  if (without.size() == description.size()) return false;  // no URL present
  return word_tokens(normalize_text(without)).empty();
}

}  // namespace cascade
