#ifndef CASCADE_FEATURES_HPP_
#define CASCADE_FEATURES_HPP_

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "cascade/corpus.hpp"

namespace cascade {

// --- Bins ------------------------------------------------------------------

enum class Polarity {
  strongly_negative,
  negative,
  neutral,
  positive,
  strongly_positive
};

enum class Level { very_low, low, medium, high, very_high };

std::string_view to_string(Polarity p);
std::string_view to_string(Level l);
std::optional<Polarity> polarity_from(std::string_view name);
std::optional<Level> level_from(std::string_view name);

// Equal-width bins. Confidence: [0,.2) [.2,.4) [.4,.6) [.6,.8) [.8,1].
// Polarity: [-1,-.6) [-.6,-.2) [-.2,.2] (.2,.6] (.6,1]. Out-of-range input
// throws.
Level bin_confidence(double raw);
Polarity bin_polarity(double raw);

// --- Analysis results --------------------------------------------------------

struct TaxonomyAssignment {
  std::vector<std::string> path;  // 1..5 levels
  double confidence = 0.0;

  std::string path_string() const;  // '/'-joined

  friend bool operator==(const TaxonomyAssignment&,
                         const TaxonomyAssignment&) = default;
};

struct ConceptAssignment {
  std::string name;
  double confidence = 0.0;

  friend bool operator==(const ConceptAssignment&,
                         const ConceptAssignment&) = default;
};

struct SentimentScore {
  double raw = 0.0;
  Polarity polarity = Polarity::neutral;

  friend bool operator==(const SentimentScore&,
                         const SentimentScore&) = default;
};

struct ToneScore {
  double raw = 0.0;
  Level bin = Level::very_low;

  friend bool operator==(const ToneScore&, const ToneScore&) = default;
};

// 13 document-level dimensions: 5 emotions, 5 social tendencies, 3 writing
// styles.
struct ToneProfile {
  ToneScore anger, fear, joy, disgust, sadness;
  ToneScore openness, conscientiousness, extraversion, agreeableness,
      emotional_range;
  ToneScore analytical, confident, tentative;

  static const std::array<std::string_view, 13>& dimension_names();
  const ToneScore& dimension(std::string_view name) const;
  ToneScore& dimension(std::string_view name);

  friend bool operator==(const ToneProfile&, const ToneProfile&) = default;
};

struct MultiwordInfo {
  int group_id = 0;
  int position = 0;    // 1-based
  int group_size = 0;

  friend bool operator==(const MultiwordInfo&, const MultiwordInfo&) = default;
};

// One tagged token. `codes` holds the category alternatives, primary first
// (e.g. {"M1","S2"}); out-of-lexicon tokens carry {"Z99"}.
struct SemanticTag {
  std::string token;
  std::vector<std::string> codes;
  bool gender_mf = false;
  bool anaphora_c = false;
  std::optional<MultiwordInfo> multiword;

  // Top-of-hierarchy label: first letter of the primary code, or "Z99" for
  // unmatched tokens.
  std::string major_label() const;
  // Reconstructed code, e.g. "M1/S2mf" or "Z3c".
  std::string code_string() const;
  bool unmatched() const { return codes.size() == 1 && codes[0] == "Z99"; }

  friend bool operator==(const SemanticTag&, const SemanticTag&) = default;
};

// The 21 top-level labels of the semantic hierarchy.
const std::set<char>& semantic_major_labels();

// --- Feature vector ----------------------------------------------------------

// F1 document sentiment, F2 semantic-category counts, F3 emotion bins,
// F4 writing bins, F5 social bins. Counting F2 as one slot this is the
// 15-component vector space the classifiers consume.
struct FeatureVector {
  Polarity f1 = Polarity::neutral;
  std::map<std::string, int> f2;  // category -> count, Z99 included
  std::array<Level, 5> f3{};      // anger, fear, joy, disgust, sadness
  std::array<Level, 3> f4{};      // analytical, confident, tentative
  std::array<Level, 5> f5{};      // openness, conscientiousness,
                                  // extraversion, agreeableness,
                                  // emotional_range

  friend bool operator==(const FeatureVector&, const FeatureVector&) = default;
};

// --- Lexicons ----------------------------------------------------------------

// File-driven replacements for the remote analysis services. All matching is
// case-folded; patterns and phrases may span multiple tokens.
class Lexicons {
 public:
  struct PathRule {
    std::vector<std::string> pattern;
    std::vector<std::string> path;
    double weight = 0.0;
  };
  struct ConceptRule {
    std::vector<std::string> pattern;
    std::string name;
    double weight = 0.0;
  };
  struct SemanticEntry {
    std::vector<std::string> phrase;
    std::vector<std::string> codes;
    bool gender_mf = false;
    bool anaphora_c = false;
  };
  struct ToneRule {
    std::string term;
    std::string dimension;
    double weight = 0.0;
  };

  Lexicons() = default;

  // Loads taxonomy.tsv, concepts.tsv, valence.tsv, tones.tsv, semantic.tsv
  // and negators.txt from `dir`. Missing files yield empty sections.
  static Lexicons load(const std::filesystem::path& dir);

  void add_taxonomy_rule(std::string_view pattern, std::string_view path,
                         double weight);
  void add_concept_rule(std::string_view pattern, std::string_view concept_name,
                        double weight);
  void add_valence(std::string_view term, double value);
  void add_negator(std::string_view term);
  void add_tone_term(std::string_view term, std::string_view dimension,
                     double weight);
  void add_semantic_entry(std::string_view phrase, std::string_view code);

  const std::vector<PathRule>& taxonomy_rules() const { return taxonomy_; }
  const std::vector<ConceptRule>& concept_rules() const { return concepts_; }
  const std::map<std::string, double>& valence() const { return valence_; }
  const std::set<std::string>& negators() const { return negators_; }
  const std::vector<ToneRule>& tone_rules() const { return tones_; }

  // Entries sharing a head token, longest phrase first.
  const std::vector<SemanticEntry>* semantic_entries(
      const std::string& head) const;

 private:
  std::vector<PathRule> taxonomy_;
  std::vector<ConceptRule> concepts_;
  std::map<std::string, double> valence_;
  std::set<std::string> negators_;
  std::vector<ToneRule> tones_;
  std::map<std::string, std::vector<SemanticEntry>> semantic_by_head_;
};

// Parses a semantic category code such as "M1/S2mf" or "Z3c". Throws on
// malformed codes or unknown major labels.
Lexicons::SemanticEntry parse_semantic_code(std::string_view code);

// --- Providers ---------------------------------------------------------------

// All providers share one saturating score:
//   min(1, sum of matched rule weights / max(1, sqrt(token count))).
// Assignments below the 0.40 confidence cutoff are dropped; results are
// sorted by confidence descending, ties broken lexicographically.
std::vector<TaxonomyAssignment> assign_taxonomy(std::string_view text,
                                                const Lexicons& lexicons);
std::vector<ConceptAssignment> assign_concepts(std::string_view text,
                                               const Lexicons& lexicons);

constexpr double kConfidenceCutoff = 0.40;

// Mean signed valence over matched terms; a negator within the two
// preceding tokens flips a term's sign.
SentimentScore document_sentiment(std::string_view text,
                                  const Lexicons& lexicons);

ToneProfile tone_profile(std::string_view text, const Lexicons& lexicons);

// Greedy longest-match tagging. Multi-word units emit one tag per word with
// a shared group id and ascending positions; punctuation tokens are dropped;
// unmatched tokens are tagged Z99 and retained.
std::vector<SemanticTag> semantic_tag(std::string_view text,
                                      const Lexicons& lexicons);

FeatureVector build_feature_vector(const SentimentScore& sentiment,
                                   const ToneProfile& tones,
                                   const std::vector<SemanticTag>& tags);

// --- Per-post bundle -----------------------------------------------------------

struct PostFeatures {
  std::string post_id;
  std::vector<TaxonomyAssignment> taxonomy;
  std::vector<ConceptAssignment> concepts;
  SentimentScore sentiment;
  ToneProfile tones;
  std::vector<SemanticTag> semantic_tags;
  FeatureVector vector;
};

// Runs every provider over the normalized description (the semantic tagger
// sees the raw text) and assembles the feature vector.
PostFeatures extract_features(const Post& post, const Lexicons& lexicons);

// JSONL round-trip for extraction output; one object per post.
std::string post_features_json(const PostFeatures& features);
PostFeatures post_features_from_json(const std::string& line);

}  // namespace cascade

#endif  // CASCADE_FEATURES_HPP_
