#include "cascade/features.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "cascade/text.hpp"
#include "json.hpp"

namespace cascade {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr std::array<std::string_view, 5> kPolarityNames{
    "strongly_negative", "negative", "neutral", "positive",
    "strongly_positive"};
constexpr std::array<std::string_view, 5> kLevelNames{"very_low", "low",
                                                      "medium", "high",
                                                      "very_high"};

std::vector<std::string> pattern_tokens(std::string_view pattern) {
  auto tokens = word_tokens(pattern);
  if (tokens.empty()) throw std::invalid_argument("empty lexicon pattern");
  return tokens;
}

bool contains_sequence(const std::vector<std::string>& tokens,
                       const std::vector<std::string>& pattern) {
  if (pattern.empty() || pattern.size() > tokens.size()) return false;
  for (std::size_t i = 0; i + pattern.size() <= tokens.size(); ++i) {
    bool match = true;
    for (std::size_t k = 0; k < pattern.size(); ++k) {
      if (tokens[i + k] != pattern[k]) {
        match = false;
        break;
      }
    }
    if (match) return true;
  }
  return false;
}

double saturating_score(double weight_sum, std::size_t token_count) {
  const double denom = std::max(1.0, std::sqrt(static_cast<double>(token_count)));
  return std::min(1.0, weight_sum / denom);
}

double parse_weight(const std::string& field, const std::string& where) {
  std::size_t used = 0;
  double w = 0.0;
  try {
    w = std::stod(field, &used);
  } catch (...) {
    throw std::runtime_error(where + ": bad weight '" + field + "'");
  }
  if (used != field.size() || !(w == w))
    throw std::runtime_error(where + ": bad weight '" + field + "'");
  return w;
}

void for_each_tsv_line(
    const std::filesystem::path& file, std::size_t min_fields,
    const std::function<void(const std::vector<std::string>&, std::size_t)>&
        fn) {
  std::ifstream in(file);
  if (!in) return;  // missing lexicon file -> empty section
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto fields = split(line, '\t');
    if (fields.size() < min_fields) {
      throw std::runtime_error(file.string() + ":" +
                               std::to_string(line_number) +
                               ": expected at least " +
                               std::to_string(min_fields) + " fields");
    }
    fn(fields, line_number);
  }
}

}  // namespace

std::string_view to_string(Polarity p) {
  return kPolarityNames[static_cast<std::size_t>(p)];
}

std::string_view to_string(Level l) {
  return kLevelNames[static_cast<std::size_t>(l)];
}

std::optional<Polarity> polarity_from(std::string_view name) {
  for (std::size_t i = 0; i < kPolarityNames.size(); ++i) {
    if (kPolarityNames[i] == name) return static_cast<Polarity>(i);
  }
  return std::nullopt;
}

std::optional<Level> level_from(std::string_view name) {
  for (std::size_t i = 0; i < kLevelNames.size(); ++i) {
    if (kLevelNames[i] == name) return static_cast<Level>(i);
  }
  return std::nullopt;
}

Level bin_confidence(double raw) {
  if (!(raw >= 0.0 && raw <= 1.0)) {
    throw std::invalid_argument("confidence outside [0,1]: " +
                                std::to_string(raw));
  }
  if (raw < 0.2) return Level::very_low;
  if (raw < 0.4) return Level::low;
  if (raw < 0.6) return Level::medium;
  if (raw < 0.8) return Level::high;
  return Level::very_high;
}

Polarity bin_polarity(double raw) {
  if (!(raw >= -1.0 && raw <= 1.0)) {
    throw std::invalid_argument("polarity outside [-1,1]: " +
                                std::to_string(raw));
  }
  if (raw < -0.6) return Polarity::strongly_negative;
  if (raw < -0.2) return Polarity::negative;
  if (raw <= 0.2) return Polarity::neutral;
  if (raw <= 0.6) return Polarity::positive;
  return Polarity::strongly_positive;
}

std::string TaxonomyAssignment::path_string() const {
  std::string out;
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (i) out.push_back('/');
    out += path[i];
  }
  return out;
}

const std::array<std::string_view, 13>& ToneProfile::dimension_names() {
  static const std::array<std::string_view, 13> names{
      "anger",           "fear",          "joy",
      "disgust",         "sadness",       "openness",
      "conscientiousness", "extraversion", "agreeableness",
      "emotional_range", "analytical",    "confident",
      "tentative"};
  return names;
}

const ToneScore& ToneProfile::dimension(std::string_view name) const {
  return const_cast<ToneProfile*>(this)->dimension(name);
}

ToneScore& ToneProfile::dimension(std::string_view name) {
  if (name == "anger") return anger;
  if (name == "fear") return fear;
  if (name == "joy") return joy;
  if (name == "disgust") return disgust;
  if (name == "sadness") return sadness;
  if (name == "openness") return openness;
  if (name == "conscientiousness") return conscientiousness;
  if (name == "extraversion") return extraversion;
  if (name == "agreeableness") return agreeableness;
  if (name == "emotional_range") return emotional_range;
  if (name == "analytical") return analytical;
  if (name == "confident") return confident;
  if (name == "tentative") return tentative;
  throw std::invalid_argument("unknown tone dimension: " + std::string(name));
}

const std::set<char>& semantic_major_labels() {
  static const std::set<char> labels{'A', 'B', 'C', 'E', 'F', 'G', 'H',
                                     'I', 'K', 'L', 'M', 'N', 'O', 'P',
                                     'Q', 'S', 'T', 'W', 'X', 'Y', 'Z'};
  return labels;
}

std::string SemanticTag::major_label() const {
  if (unmatched()) return "Z99";
  return std::string(1, codes.front()[0]);
}

std::string SemanticTag::code_string() const {
  std::string out;
  for (std::size_t i = 0; i < codes.size(); ++i) {
    if (i) out.push_back('/');
    out += codes[i];
  }
  if (gender_mf) out += "mf";
  if (anaphora_c) out += "c";
  return out;
}

Lexicons::SemanticEntry parse_semantic_code(std::string_view code) {
  Lexicons::SemanticEntry entry;
  if (code.empty()) throw std::invalid_argument("empty semantic code");
  for (const auto& part : split(code, '/')) {
    if (part.empty()) throw std::invalid_argument("empty semantic code part");
    const char major = part[0];
    if (!semantic_major_labels().contains(major)) {
      throw std::invalid_argument("unknown major label in code: " +
                                  std::string(code));
    }
    std::size_t i = 1;
    std::size_t digits = 0;
    while (i < part.size() &&
           ((part[i] >= '0' && part[i] <= '9') || part[i] == '.')) {
      if (part[i] != '.') ++digits;
      ++i;
    }
    if (digits == 0) {
      throw std::invalid_argument("semantic code missing subdivision: " +
                                  std::string(code));
    }
    std::string modifiers = part.substr(i);
    for (char m : modifiers) {
      switch (m) {
        case 'm':
        case 'f':
          entry.gender_mf = true;
          break;
        case 'c':
          entry.anaphora_c = true;
          break;
        default:
          throw std::invalid_argument("unknown modifier '" +
                                      std::string(1, m) + "' in code: " +
                                      std::string(code));
      }
    }
    entry.codes.push_back(part.substr(0, i));
  }
  return entry;
}

Lexicons Lexicons::load(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) {
    throw std::runtime_error("lexicon directory not found: " + dir.string());
  }
  Lexicons lex;
  for_each_tsv_line(dir / "taxonomy.tsv", 3,
                    [&](const std::vector<std::string>& f, std::size_t) {
                      lex.add_taxonomy_rule(f[0], f[1],
                                            parse_weight(f[2], "taxonomy.tsv"));
                    });
  for_each_tsv_line(dir / "concepts.tsv", 3,
                    [&](const std::vector<std::string>& f, std::size_t) {
                      lex.add_concept_rule(f[0], f[1],
                                           parse_weight(f[2], "concepts.tsv"));
                    });
  for_each_tsv_line(dir / "valence.tsv", 2,
                    [&](const std::vector<std::string>& f, std::size_t) {
                      lex.add_valence(f[0], parse_weight(f[1], "valence.tsv"));
                    });
  for_each_tsv_line(dir / "tones.tsv", 3,
                    [&](const std::vector<std::string>& f, std::size_t) {
                      lex.add_tone_term(f[0], f[1],
                                        parse_weight(f[2], "tones.tsv"));
                    });
  for_each_tsv_line(dir / "semantic.tsv", 2,
                    [&](const std::vector<std::string>& f, std::size_t) {
                      lex.add_semantic_entry(f[0], f[1]);
                    });
  for_each_tsv_line(dir / "negators.txt", 1,
                    [&](const std::vector<std::string>& f, std::size_t) {
                      lex.add_negator(f[0]);
                    });
  return lex;
}

void Lexicons::add_taxonomy_rule(std::string_view pattern,
                                 std::string_view path, double weight) {
  if (weight < 0.0) throw std::invalid_argument("negative taxonomy weight");
  PathRule rule;
  rule.pattern = pattern_tokens(pattern);
  for (const auto& seg : split(path, '/')) {
    if (seg.empty())
      throw std::invalid_argument("empty taxonomy path segment in: " +
                                  std::string(path));
    rule.path.push_back(seg);
  }
  if (rule.path.empty() || rule.path.size() > 5) {
    throw std::invalid_argument("taxonomy path depth must be 1..5: " +
                                std::string(path));
  }
  rule.weight = weight;
  taxonomy_.push_back(std::move(rule));
}

void Lexicons::add_concept_rule(std::string_view pattern,
                                std::string_view concept_name, double weight) {
  if (weight < 0.0) throw std::invalid_argument("negative concept weight");
  if (concept_name.empty()) throw std::invalid_argument("empty concept name");
  concepts_.push_back(
      {pattern_tokens(pattern), std::string(concept_name), weight});
}

void Lexicons::add_valence(std::string_view term, double value) {
  if (!(value >= -1.0 && value <= 1.0)) {
    throw std::invalid_argument("valence outside [-1,1] for term: " +
                                std::string(term));
  }
  const auto tokens = pattern_tokens(term);
  if (tokens.size() != 1)
    throw std::invalid_argument("valence terms must be single tokens");
  valence_[tokens[0]] = value;
}

void Lexicons::add_negator(std::string_view term) {
  const auto tokens = pattern_tokens(term);
  if (tokens.size() != 1)
    throw std::invalid_argument("negators must be single tokens");
  negators_.insert(tokens[0]);
}

void Lexicons::add_tone_term(std::string_view term, std::string_view dimension,
                             double weight) {
  if (weight < 0.0) throw std::invalid_argument("negative tone weight");
  const auto names = ToneProfile::dimension_names();
  if (std::find(names.begin(), names.end(), dimension) == names.end()) {
    throw std::invalid_argument("unknown tone dimension: " +
                                std::string(dimension));
  }
  const auto tokens = pattern_tokens(term);
  if (tokens.size() != 1)
    throw std::invalid_argument("tone terms must be single tokens");
  tones_.push_back({tokens[0], std::string(dimension), weight});
}

void Lexicons::add_semantic_entry(std::string_view phrase,
                                  std::string_view code) {
  SemanticEntry entry = parse_semantic_code(code);
  entry.phrase = pattern_tokens(phrase);
  auto& bucket = semantic_by_head_[entry.phrase.front()];
  bucket.push_back(std::move(entry));
  // Longest phrase first so greedy matching prefers multi-word units.
  std::stable_sort(bucket.begin(), bucket.end(),
                   [](const SemanticEntry& a, const SemanticEntry& b) {
                     return a.phrase.size() > b.phrase.size();
                   });
}

const std::vector<Lexicons::SemanticEntry>* Lexicons::semantic_entries(
    const std::string& head) const {
  const auto it = semantic_by_head_.find(head);
  return it == semantic_by_head_.end() ? nullptr : &it->second;
}

std::vector<TaxonomyAssignment> assign_taxonomy(std::string_view text,
                                                const Lexicons& lexicons) {
  const auto tokens = word_tokens(text);
  std::map<std::string, std::pair<std::vector<std::string>, double>> sums;
  for (const auto& rule : lexicons.taxonomy_rules()) {
    if (!contains_sequence(tokens, rule.pattern)) continue;
    auto& entry = sums[TaxonomyAssignment{rule.path, 0}.path_string()];
    entry.first = rule.path;
    entry.second += rule.weight;
  }
  std::vector<TaxonomyAssignment> out;
  for (auto& [key, entry] : sums) {
    const double conf = saturating_score(entry.second, tokens.size());
    if (conf >= kConfidenceCutoff) {
      out.push_back({std::move(entry.first), conf});
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.confidence != b.confidence) return a.confidence > b.confidence;
    return a.path < b.path;
  });
  return out;
}

std::vector<ConceptAssignment> assign_concepts(std::string_view text,
                                               const Lexicons& lexicons) {
  const auto tokens = word_tokens(text);
  std::map<std::string, double> sums;
  for (const auto& rule : lexicons.concept_rules()) {
    if (!contains_sequence(tokens, rule.pattern)) continue;
    sums[rule.name] += rule.weight;
  }
  std::vector<ConceptAssignment> out;
  for (const auto& [name, sum] : sums) {
    const double conf = saturating_score(sum, tokens.size());
    if (conf >= kConfidenceCutoff) out.push_back({name, conf});
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.confidence != b.confidence) return a.confidence > b.confidence;
    return a.name < b.name;
  });
  return out;
}

SentimentScore document_sentiment(std::string_view text,
                                  const Lexicons& lexicons) {
  const auto tokens = word_tokens(text);
  const auto& valence = lexicons.valence();
  const auto& negators = lexicons.negators();

  double sum = 0.0;
  std::size_t matched = 0;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const auto it = valence.find(tokens[i]);
    if (it == valence.end()) continue;
    double value = it->second;
    for (std::size_t back = 1; back <= 2 && back <= i; ++back) {
      if (negators.contains(tokens[i - back])) {
        value = -value;
        break;
      }
    }
    sum += value;
    ++matched;
  }

  SentimentScore score;
  score.raw = matched == 0 ? 0.0 : sum / static_cast<double>(matched);
  score.polarity = bin_polarity(score.raw);
  return score;
}

ToneProfile tone_profile(std::string_view text, const Lexicons& lexicons) {
  const auto tokens = word_tokens(text);
  const std::unordered_set<std::string> token_set(tokens.begin(),
                                                  tokens.end());
  std::map<std::string, double> sums;
  for (const auto& rule : lexicons.tone_rules()) {
    if (token_set.contains(rule.term)) sums[rule.dimension] += rule.weight;
  }
  ToneProfile profile;
  for (const auto name : ToneProfile::dimension_names()) {
    const auto it = sums.find(std::string(name));
    ToneScore& dim = profile.dimension(name);
    dim.raw = it == sums.end() ? 0.0
                               : saturating_score(it->second, tokens.size());
    dim.bin = bin_confidence(dim.raw);
  }
  return profile;
}

std::vector<SemanticTag> semantic_tag(std::string_view text,
                                      const Lexicons& lexicons) {
  const auto tokens = tokenize(text);
  std::vector<SemanticTag> out;
  int group_id = 0;
  std::size_t i = 0;
  while (i < tokens.size()) {
    if (!tokens[i].is_word) {
      ++i;  // PUNC dropped from output
      continue;
    }
    const std::string head = casefold(tokens[i].text);
    const Lexicons::SemanticEntry* matched = nullptr;
    if (const auto* entries = lexicons.semantic_entries(head)) {
      for (const auto& entry : *entries) {
        bool ok = i + entry.phrase.size() <= tokens.size();
        for (std::size_t k = 0; ok && k < entry.phrase.size(); ++k) {
          ok = tokens[i + k].is_word &&
               casefold(tokens[i + k].text) == entry.phrase[k];
        }
        if (ok) {
          matched = &entry;
          break;  // entries are longest-first
        }
      }
    }
    if (!matched) {
      SemanticTag tag;
      tag.token = tokens[i].text;
      tag.codes = {"Z99"};
      out.push_back(std::move(tag));
      ++i;
      continue;
    }
    const auto size = matched->phrase.size();
    const int group = size > 1 ? ++group_id : 0;
    for (std::size_t k = 0; k < size; ++k) {
      SemanticTag tag;
      tag.token = tokens[i + k].text;
      tag.codes = matched->codes;
      tag.gender_mf = matched->gender_mf;
      tag.anaphora_c = matched->anaphora_c;
      if (size > 1) {
        tag.multiword = MultiwordInfo{group, static_cast<int>(k) + 1,
                                      static_cast<int>(size)};
      }
      out.push_back(std::move(tag));
    }
    i += size;
  }
  return out;
}

FeatureVector build_feature_vector(const SentimentScore& sentiment,
                                   const ToneProfile& tones,
                                   const std::vector<SemanticTag>& tags) {
  FeatureVector v;
  v.f1 = sentiment.polarity;
  for (const auto& tag : tags) ++v.f2[tag.codes.front()];
  v.f3 = {tones.anger.bin, tones.fear.bin, tones.joy.bin, tones.disgust.bin,
          tones.sadness.bin};
  v.f4 = {tones.analytical.bin, tones.confident.bin, tones.tentative.bin};
  v.f5 = {tones.openness.bin, tones.conscientiousness.bin,
          tones.extraversion.bin, tones.agreeableness.bin,
          tones.emotional_range.bin};
  return v;
}

PostFeatures extract_features(const Post& post, const Lexicons& lexicons) {
  PostFeatures f;
  f.post_id = post.post_id;
  const std::string normalized = normalize_text(post.description);
  f.taxonomy = assign_taxonomy(normalized, lexicons);
  f.concepts = assign_concepts(normalized, lexicons);
  f.sentiment = document_sentiment(normalized, lexicons);
  f.tones = tone_profile(normalized, lexicons);
  f.semantic_tags = semantic_tag(post.description, lexicons);
  f.vector = build_feature_vector(f.sentiment, f.tones, f.semantic_tags);
  return f;
}

std::string post_features_json(const PostFeatures& f) {
  ordered_json j;
  j["post_id"] = f.post_id;
  j["f1"] = {{"raw", f.sentiment.raw},
             {"polarity", std::string(to_string(f.sentiment.polarity))}};
  ordered_json f2 = ordered_json::object();
  for (const auto& [code, count] : f.vector.f2) f2[code] = count;
  j["f2"] = std::move(f2);
  ordered_json tones = ordered_json::object();
  for (const auto name : ToneProfile::dimension_names()) {
    const ToneScore& dim = f.tones.dimension(name);
    tones[std::string(name)] = {{"raw", dim.raw},
                                {"bin", std::string(to_string(dim.bin))}};
  }
  j["tones"] = std::move(tones);
  ordered_json taxonomy = ordered_json::array();
  for (const auto& a : f.taxonomy) {
    taxonomy.push_back(
        {{"path", a.path_string()}, {"confidence", a.confidence}});
  }
  j["taxonomy"] = std::move(taxonomy);
  ordered_json concepts = ordered_json::array();
  for (const auto& c : f.concepts) {
    concepts.push_back({{"concept", c.name}, {"confidence", c.confidence}});
  }
  j["concepts"] = std::move(concepts);
  ordered_json tags = ordered_json::array();
  for (const auto& t : f.semantic_tags) {
    ordered_json tj;
    tj["token"] = t.token;
    tj["code"] = t.code_string();
    if (t.multiword) {
      tj["group"] = t.multiword->group_id;
      tj["position"] = t.multiword->position;
      tj["size"] = t.multiword->group_size;
    }
    tags.push_back(std::move(tj));
  }
  j["semantic_tags"] = std::move(tags);
  return j.dump();
}

PostFeatures post_features_from_json(const std::string& line) {
  const auto j = ordered_json::parse(line);
  PostFeatures f;
  f.post_id = j.at("post_id").get<std::string>();
  f.sentiment.raw = j.at("f1").at("raw").get<double>();
  const auto polarity =
      polarity_from(j.at("f1").at("polarity").get<std::string>());
  if (!polarity) throw std::runtime_error("bad polarity in features json");
  f.sentiment.polarity = *polarity;

  for (const auto name : ToneProfile::dimension_names()) {
    const auto& tj = j.at("tones").at(std::string(name));
    ToneScore& dim = f.tones.dimension(name);
    dim.raw = tj.at("raw").get<double>();
    const auto bin = level_from(tj.at("bin").get<std::string>());
    if (!bin) throw std::runtime_error("bad tone bin in features json");
    dim.bin = *bin;
  }

  for (const auto& a : j.at("taxonomy")) {
    TaxonomyAssignment assignment;
    for (auto& seg : split(a.at("path").get<std::string>(), '/')) {
      assignment.path.push_back(seg);
    }
    assignment.confidence = a.at("confidence").get<double>();
    f.taxonomy.push_back(std::move(assignment));
  }
  for (const auto& c : j.at("concepts")) {
    f.concepts.push_back({c.at("concept").get<std::string>(),
                          c.at("confidence").get<double>()});
  }
  for (const auto& tj : j.at("semantic_tags")) {
    const auto entry = parse_semantic_code(tj.at("code").get<std::string>());
    SemanticTag tag;
    tag.token = tj.at("token").get<std::string>();
    tag.codes = entry.codes;
    tag.gender_mf = entry.gender_mf;
    tag.anaphora_c = entry.anaphora_c;
    if (tj.contains("group")) {
      tag.multiword = MultiwordInfo{tj.at("group").get<int>(),
                                    tj.at("position").get<int>(),
                                    tj.at("size").get<int>()};
    }
    f.semantic_tags.push_back(std::move(tag));
  }
  f.vector = build_feature_vector(f.sentiment, f.tones, f.semantic_tags);
  return f;
}

}  // namespace cascade
