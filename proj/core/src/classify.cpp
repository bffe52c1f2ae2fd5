#include "cascade/classify.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "cascade/rng.hpp"
#include "cascade/text.hpp"
#include "json.hpp"

namespace cascade {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr int kModelFormatVersion = 1;

int level_value(Level l) { return static_cast<int>(l); }

}  // namespace

// --- Stage 1 -----------------------------------------------------------------

TopicWhitelist TopicWhitelist::defaults() {
  TopicWhitelist w;
  w.paths = {
      "religion and spirituality",
      "society/unrest and war",
      "society/racism",
      "society/personal offense/hate crime",
      "law, govt & politics/espionage and intelligence/terrorism",
      "law, govt & politics/legal issues/human rights",
  };
  return w;
}

void TopicWhitelist::harvest_concepts(
    const std::vector<ConceptAssignment>& concepts) {
  for (const auto& c : concepts) concept_lexicon.insert(casefold(c.name));
}

TopicLabel topic_classify(const std::vector<TaxonomyAssignment>& taxonomy,
                          const std::vector<ConceptAssignment>& concepts,
                          const TopicWhitelist& whitelist, int top_k) {
  for (const auto& a : taxonomy) {
    if (whitelist.paths.contains(a.path_string())) return TopicLabel::topic;
  }
  if (taxonomy.size() > 5) {
    const std::size_t take =
        std::min<std::size_t>(concepts.size(), static_cast<std::size_t>(
                                                   std::max(top_k, 0)));
    for (std::size_t i = 0; i < take; ++i) {
      if (whitelist.concept_lexicon.contains(casefold(concepts[i].name)))
        return TopicLabel::topic;
    }
  }
  return TopicLabel::unknown;
}

// --- Schema --------------------------------------------------------------------

std::string_view to_string(FeatureGroup g) {
  switch (g) {
    case FeatureGroup::f1: return "F1";
    case FeatureGroup::f2: return "F2";
    case FeatureGroup::f3: return "F3";
    case FeatureGroup::f4: return "F4";
    case FeatureGroup::f5: return "F5";
  }
  return "?";
}

std::optional<FeatureGroup> feature_group_from(std::string_view name) {
  for (const auto g : all_feature_groups()) {
    if (to_string(g) == name) return g;
  }
  return std::nullopt;
}

const std::array<FeatureGroup, 5>& all_feature_groups() {
  static const std::array<FeatureGroup, 5> groups{
      FeatureGroup::f1, FeatureGroup::f2, FeatureGroup::f3, FeatureGroup::f4,
      FeatureGroup::f5};
  return groups;
}

FeatureSchema FeatureSchema::all() {
  FeatureSchema s;
  for (const auto g : all_feature_groups()) s.active.insert(g);
  return s;
}

FeatureSchema FeatureSchema::without(
    const std::vector<FeatureGroup>& removed) {
  FeatureSchema s = all();
  for (const auto g : removed) s.active.erase(g);
  return s;
}

std::string FeatureSchema::digest() const {
  std::string canonical = "cascade-features-v1|domain=5|groups=";
  for (const auto g : all_feature_groups()) {
    if (active.contains(g)) {
      canonical += to_string(g);
      canonical += ',';
    }
  }
  canonical += "|components=";
  for (const auto& c : component_catalog()) {
    if (active.contains(c.group)) {
      canonical += c.name;
      canonical += ',';
    }
  }
  return to_hex(fnv1a64(canonical));
}

const std::vector<ComponentRef>& component_catalog() {
  static const std::vector<ComponentRef> catalog = {
      {"f1", FeatureGroup::f1,
       [](const FeatureVector& v) { return static_cast<int>(v.f1); }},
      {"f3.anger", FeatureGroup::f3,
       [](const FeatureVector& v) { return level_value(v.f3[0]); }},
      {"f3.fear", FeatureGroup::f3,
       [](const FeatureVector& v) { return level_value(v.f3[1]); }},
      {"f3.joy", FeatureGroup::f3,
       [](const FeatureVector& v) { return level_value(v.f3[2]); }},
      {"f3.disgust", FeatureGroup::f3,
       [](const FeatureVector& v) { return level_value(v.f3[3]); }},
      {"f3.sadness", FeatureGroup::f3,
       [](const FeatureVector& v) { return level_value(v.f3[4]); }},
      {"f4.analytical", FeatureGroup::f4,
       [](const FeatureVector& v) { return level_value(v.f4[0]); }},
      {"f4.confident", FeatureGroup::f4,
       [](const FeatureVector& v) { return level_value(v.f4[1]); }},
      {"f4.tentative", FeatureGroup::f4,
       [](const FeatureVector& v) { return level_value(v.f4[2]); }},
      {"f5.openness", FeatureGroup::f5,
       [](const FeatureVector& v) { return level_value(v.f5[0]); }},
      {"f5.conscientiousness", FeatureGroup::f5,
       [](const FeatureVector& v) { return level_value(v.f5[1]); }},
      {"f5.extraversion", FeatureGroup::f5,
       [](const FeatureVector& v) { return level_value(v.f5[2]); }},
      {"f5.agreeableness", FeatureGroup::f5,
       [](const FeatureVector& v) { return level_value(v.f5[3]); }},
      {"f5.emotional_range", FeatureGroup::f5,
       [](const FeatureVector& v) { return level_value(v.f5[4]); }},
  };
  return catalog;
}

std::vector<ComponentRef> active_components(const FeatureSchema& schema) {
  std::vector<ComponentRef> out;
  for (const auto& c : component_catalog()) {
    if (schema.has(c.group)) out.push_back(c);
  }
  return out;
}

// --- Training ---------------------------------------------------------------------

std::string_view to_string(Algorithm a) {
  switch (a) {
    case Algorithm::nb: return "nb";
    case Algorithm::dt: return "dt";
    case Algorithm::rf: return "rf";
  }
  return "?";
}

std::optional<Algorithm> algorithm_from(std::string_view name) {
  if (name == "nb") return Algorithm::nb;
  if (name == "dt") return Algorithm::dt;
  if (name == "rf") return Algorithm::rf;
  return std::nullopt;
}

namespace {

NbClassModel fit_nb_class(const std::vector<FeatureVector>& vectors,
                          const FeatureSchema& schema) {
  NbClassModel model;
  const double n = static_cast<double>(vectors.size());
  for (const auto& comp : active_components(schema)) {
    NbComponentModel cm;
    cm.name = std::string(comp.name);
    std::array<double, kComponentDomain> counts{};
    for (const auto& v : vectors) ++counts[comp.value(v)];
    for (int d = 0; d < kComponentDomain; ++d) {
      cm.logp[d] = std::log((counts[d] + 1.0) / (n + kComponentDomain));
    }
    model.components.push_back(std::move(cm));
  }
  if (schema.has(FeatureGroup::f2)) {
    std::map<std::string, std::int64_t> counts;
    std::int64_t total = 0;
    for (const auto& v : vectors) {
      for (const auto& [cat, c] : v.f2) {
        counts[cat] += c;
        total += c;
      }
    }
    // Laplace-smoothed multinomial with one extra bucket for unseen
    // categories; probabilities sum to 1 over vocab + unseen. An empty
    // training vocabulary says nothing about F2, so scoring skips the
    // group entirely in that case.
    const double denom =
        static_cast<double>(total) + static_cast<double>(counts.size()) + 1.0;
    for (const auto& [cat, c] : counts) {
      model.f2_logp[cat] = std::log((static_cast<double>(c) + 1.0) / denom);
    }
    model.f2_unseen_logp = counts.empty() ? 0.0 : std::log(1.0 / denom);
  }
  return model;
}

double nb_mean_loglik(const NbClassModel& model, const FeatureSchema& schema,
                      const FeatureVector& v) {
  double loglik = 0.0;
  double slots = 0.0;
  std::size_t ci = 0;
  for (const auto& comp : active_components(schema)) {
    loglik += model.components[ci].logp[comp.value(v)];
    slots += 1.0;
    ++ci;
  }
  if (schema.has(FeatureGroup::f2) && !model.f2_logp.empty()) {
    for (const auto& [cat, count] : v.f2) {
      const auto it = model.f2_logp.find(cat);
      const double lp =
          it == model.f2_logp.end() ? model.f2_unseen_logp : it->second;
      loglik += count * lp;
      slots += count;
    }
  }
  return loglik / std::max(1.0, slots);
}

// Synthetic contrast class: every categorical component uniform over its
// 5-value domain; the semantic bag re-samples the training vocabulary with
// a total drawn from the observed range.
std::vector<FeatureVector> synthesize_outliers(
    const std::vector<FeatureVector>& positives, const FeatureSchema& schema,
    std::size_t count, Rng rng) {
  std::vector<std::string> vocab;
  std::int64_t min_total = 0;
  std::int64_t max_total = 0;
  if (schema.has(FeatureGroup::f2)) {
    std::set<std::string> seen;
    bool first = true;
    for (const auto& v : positives) {
      std::int64_t total = 0;
      for (const auto& [cat, c] : v.f2) {
        seen.insert(cat);
        total += c;
      }
      min_total = first ? total : std::min(min_total, total);
      max_total = first ? total : std::max(max_total, total);
      first = false;
    }
    vocab.assign(seen.begin(), seen.end());
  }

  std::vector<FeatureVector> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    FeatureVector v;
    for (const auto& comp : component_catalog()) {
      if (!schema.has(comp.group)) continue;
      const int value = static_cast<int>(rng.bounded(kComponentDomain));
      if (comp.group == FeatureGroup::f1) {
        v.f1 = static_cast<Polarity>(value);
      } else {
        // Locate the slot behind the catalog entry by name.
        const std::string_view name = comp.name;
        auto set_level = [&](Level& slot) { slot = static_cast<Level>(value); };
        if (name == "f3.anger") set_level(v.f3[0]);
        else if (name == "f3.fear") set_level(v.f3[1]);
        else if (name == "f3.joy") set_level(v.f3[2]);
        else if (name == "f3.disgust") set_level(v.f3[3]);
        else if (name == "f3.sadness") set_level(v.f3[4]);
        else if (name == "f4.analytical") set_level(v.f4[0]);
        else if (name == "f4.confident") set_level(v.f4[1]);
        else if (name == "f4.tentative") set_level(v.f4[2]);
        else if (name == "f5.openness") set_level(v.f5[0]);
        else if (name == "f5.conscientiousness") set_level(v.f5[1]);
        else if (name == "f5.extraversion") set_level(v.f5[2]);
        else if (name == "f5.agreeableness") set_level(v.f5[3]);
        else if (name == "f5.emotional_range") set_level(v.f5[4]);
      }
    }
    if (schema.has(FeatureGroup::f2) && !vocab.empty() && max_total > 0) {
      const std::int64_t span = max_total - min_total + 1;
      const std::int64_t total =
          min_total + static_cast<std::int64_t>(
                          rng.bounded(static_cast<std::uint64_t>(span)));
      for (std::int64_t t = 0; t < total; ++t) {
        ++v.f2[vocab[rng.bounded(vocab.size())]];
      }
    }
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<TreeFeature> build_tree_features(
    const std::vector<FeatureVector>& positives, const TrainConfig& config) {
  std::vector<TreeFeature> features;
  const auto& catalog = component_catalog();
  for (std::size_t i = 0; i < catalog.size(); ++i) {
    if (config.schema.has(catalog[i].group)) {
      features.push_back({static_cast<int>(i), {}});
    }
  }
  if (config.schema.has(FeatureGroup::f2)) {
    std::map<std::string, std::int64_t> counts;
    for (const auto& v : positives) {
      for (const auto& [cat, c] : v.f2) counts[cat] += c;
    }
    std::vector<std::pair<std::string, std::int64_t>> ranked(counts.begin(),
                                                             counts.end());
    std::stable_sort(ranked.begin(), ranked.end(),
                     [](const auto& a, const auto& b) {
                       if (a.second != b.second) return a.second > b.second;
                       return a.first < b.first;
                     });
    const std::size_t take = std::min<std::size_t>(
        ranked.size(), static_cast<std::size_t>(
                           std::max(config.f2_top_categories, 0)));
    for (std::size_t i = 0; i < take; ++i) {
      features.push_back({-1, ranked[i].first});
    }
  }
  return features;
}

double tree_feature_value(const TreeFeature& f, const FeatureVector& v) {
  if (f.component >= 0) {
    return static_cast<double>(
        component_catalog()[static_cast<std::size_t>(f.component)].value(v));
  }
  const auto it = v.f2.find(f.f2_category);
  return it == v.f2.end() ? 0.0 : static_cast<double>(it->second);
}

struct TreeBuilder {
  const std::vector<FeatureVector>& samples;
  const std::vector<char>& labels;
  const std::vector<TreeFeature>& features;
  int max_depth;
  int min_leaf;
  std::size_t features_per_split;  // 0 = all (decision tree)
  Rng rng;

  std::vector<TreeNode> nodes;

  static double gini(std::int64_t pos, std::int64_t n) {
    if (n == 0) return 0.0;
    const double p = static_cast<double>(pos) / static_cast<double>(n);
    return 2.0 * p * (1.0 - p);
  }

  int build(std::vector<std::size_t> idx, int depth) {
    std::int64_t pos = 0;
    for (const auto i : idx) pos += labels[i];
    const auto n = static_cast<std::int64_t>(idx.size());

    const int node_index = static_cast<int>(nodes.size());
    nodes.emplace_back();
    nodes[node_index].positive_fraction =
        n == 0 ? 0.0 : static_cast<double>(pos) / static_cast<double>(n);
    nodes[node_index].sample_count = static_cast<int>(n);

    if (depth >= max_depth || pos == 0 || pos == n ||
        n < 2 * static_cast<std::int64_t>(min_leaf)) {
      return node_index;
    }

    // Candidate features: everything for a single tree, a seeded subsample
    // per split for forests.
    std::vector<std::size_t> candidates(features.size());
    std::iota(candidates.begin(), candidates.end(), 0);
    if (features_per_split > 0 && features_per_split < candidates.size()) {
      for (std::size_t i = 0; i < features_per_split; ++i) {
        const std::size_t j =
            i + static_cast<std::size_t>(rng.bounded(candidates.size() - i));
        std::swap(candidates[i], candidates[j]);
      }
      candidates.resize(features_per_split);
      std::sort(candidates.begin(), candidates.end());
    }

    const double parent = gini(pos, n);
    double best_gain = 1e-12;
    std::size_t best_feature = 0;
    double best_threshold = 0.0;
    bool found = false;

    std::vector<std::pair<double, char>> values;
    values.reserve(idx.size());
    for (const auto fi : candidates) {
      values.clear();
      for (const auto i : idx) {
        values.emplace_back(tree_feature_value(features[fi], samples[i]),
                            labels[i]);
      }
      std::sort(values.begin(), values.end());
      std::int64_t left_pos = 0;
      std::int64_t left_n = 0;
      for (std::size_t i = 0; i + 1 < values.size(); ++i) {
        left_pos += values[i].second;
        ++left_n;
        if (values[i].first == values[i + 1].first) continue;
        const std::int64_t right_n = n - left_n;
        if (left_n < min_leaf || right_n < min_leaf) continue;
        const std::int64_t right_pos = pos - left_pos;
        const double gain =
            parent - (static_cast<double>(left_n) / n) * gini(left_pos, left_n) -
            (static_cast<double>(right_n) / n) * gini(right_pos, right_n);
        if (gain > best_gain) {
          best_gain = gain;
          best_feature = fi;
          best_threshold = (values[i].first + values[i + 1].first) / 2.0;
          found = true;
        }
      }
    }
    if (!found) return node_index;

    std::vector<std::size_t> left_idx;
    std::vector<std::size_t> right_idx;
    for (const auto i : idx) {
      const double v = tree_feature_value(features[best_feature], samples[i]);
      (v <= best_threshold ? left_idx : right_idx).push_back(i);
    }
    idx.clear();
    idx.shrink_to_fit();

    nodes[node_index].feature = static_cast<int>(best_feature);
    nodes[node_index].threshold = best_threshold;
    const int left = build(std::move(left_idx), depth + 1);
    const int right = build(std::move(right_idx), depth + 1);
    nodes[node_index].left = left;
    nodes[node_index].right = right;
    return node_index;
  }
};

double tree_leaf_fraction(const TreeModel& tree,
                          const std::vector<TreeFeature>& features,
                          const FeatureVector& v) {
  int node = 0;
  while (tree.nodes[node].feature >= 0) {
    const auto& n = tree.nodes[node];
    const double value = tree_feature_value(
        features[static_cast<std::size_t>(n.feature)], v);
    node = value <= n.threshold ? n.left : n.right;
  }
  return tree.nodes[node].positive_fraction;
}

}  // namespace

OneClassModel train(Algorithm algorithm,
                    const std::vector<FeatureVector>& positives,
                    const TrainConfig& config,
                    const std::vector<FeatureVector>& negatives) {
  if (positives.size() < config.min_train) {
    throw std::invalid_argument(
        "too few training vectors: " + std::to_string(positives.size()) +
        " < " + std::to_string(config.min_train));
  }
  if (config.schema.active.empty()) {
    throw std::invalid_argument("feature schema has no active groups");
  }
  const bool supervised = config.supervised && !negatives.empty();

  OneClassModel model;
  model.algorithm = algorithm;
  model.schema = config.schema;
  model.training_digest = config.schema.digest();
  model.rng_seed = config.seed;

  if (algorithm == Algorithm::nb) {
    model.nb = fit_nb_class(positives, config.schema);
    if (supervised) {
      model.nb_negative = fit_nb_class(negatives, config.schema);
      model.decision_threshold = 0.5;
      return model;
    }
    std::vector<double> self_scores;
    self_scores.reserve(positives.size());
    for (const auto& v : positives) {
      self_scores.push_back(
          std::exp(nb_mean_loglik(model.nb, config.schema, v)));
    }
    std::sort(self_scores.begin(), self_scores.end());
    const auto idx = std::min(
        self_scores.size() - 1,
        static_cast<std::size_t>(config.nb_tau *
                                 static_cast<double>(self_scores.size())));
    model.decision_threshold = self_scores[idx];
    return model;
  }

  // dt / rf: contrast the positive class against explicit negatives or
  // seeded synthetic outliers.
  model.tree_features = build_tree_features(positives, config);
  if (model.tree_features.empty()) {
    throw std::invalid_argument("no usable tree features for active schema");
  }

  std::vector<FeatureVector> contrast;
  if (supervised) {
    contrast = negatives;
  } else {
    const auto count = static_cast<std::size_t>(std::llround(
        config.outlier_ratio * static_cast<double>(positives.size())));
    contrast = synthesize_outliers(positives, config.schema,
                                   std::max<std::size_t>(count, 1),
                                   Rng(config.seed).fork(1));
  }

  std::vector<FeatureVector> samples;
  std::vector<char> labels;
  samples.reserve(positives.size() + contrast.size());
  for (const auto& v : positives) {
    samples.push_back(v);
    labels.push_back(1);
  }
  for (auto& v : contrast) {
    samples.push_back(std::move(v));
    labels.push_back(0);
  }

  model.decision_threshold = config.tree_threshold;

  if (algorithm == Algorithm::dt) {
    TreeBuilder builder{samples,          labels, model.tree_features,
                        config.max_depth, config.min_leaf,
                        0,                Rng(config.seed).fork(2),
                        {}};
    std::vector<std::size_t> idx(samples.size());
    std::iota(idx.begin(), idx.end(), 0);
    builder.build(std::move(idx), 0);
    model.trees.push_back({std::move(builder.nodes)});
    return model;
  }

  // Random forest: bagged trees with per-split feature subsampling;
  // per-tree seeds derive from the base seed so a parallel build would be
  // bit-identical.
  const auto per_split = static_cast<std::size_t>(std::ceil(
      std::sqrt(static_cast<double>(model.tree_features.size()))));
  for (int t = 0; t < config.rf_trees; ++t) {
    Rng tree_rng = Rng(config.seed).fork(100 + static_cast<std::uint64_t>(t));
    std::vector<std::size_t> bag(samples.size());
    for (auto& b : bag) b = static_cast<std::size_t>(
        tree_rng.bounded(samples.size()));
    TreeBuilder builder{samples,          labels,         model.tree_features,
                        config.max_depth, config.min_leaf, per_split,
                        tree_rng,         {}};
    builder.build(std::move(bag), 0);
    model.trees.push_back({std::move(builder.nodes)});
  }
  return model;
}

double score(const OneClassModel& model, const FeatureVector& vector) {
  if (model.training_digest != model.schema.digest()) {
    throw std::invalid_argument("feature schema mismatch: model digest " +
                                model.training_digest);
  }
  switch (model.algorithm) {
    case Algorithm::nb: {
      const double pos =
          std::exp(nb_mean_loglik(model.nb, model.schema, vector));
      if (!model.nb_negative) return pos;
      const double neg =
          std::exp(nb_mean_loglik(*model.nb_negative, model.schema, vector));
      return pos + neg == 0.0 ? 0.5 : pos / (pos + neg);
    }
    case Algorithm::dt:
      return tree_leaf_fraction(model.trees.front(), model.tree_features,
                                vector);
    case Algorithm::rf: {
      std::int64_t votes = 0;
      for (const auto& tree : model.trees) {
        if (tree_leaf_fraction(tree, model.tree_features, vector) >= 0.5)
          ++votes;
      }
      return static_cast<double>(votes) /
             static_cast<double>(model.trees.size());
    }
  }
  return 0.0;
}

IntentLabel classify_intent(const OneClassModel& model,
                            const FeatureVector& vector) {
  return score(model, vector) >= model.decision_threshold
             ? IntentLabel::intent
             : IntentLabel::unknown;
}

// --- Persistence ------------------------------------------------------------------

namespace {

ordered_json nb_class_json(const NbClassModel& m) {
  ordered_json j;
  ordered_json comps = ordered_json::array();
  for (const auto& c : m.components) {
    ordered_json cj;
    cj["name"] = c.name;
    cj["logp"] = c.logp;
    comps.push_back(std::move(cj));
  }
  j["components"] = std::move(comps);
  ordered_json f2 = ordered_json::object();
  for (const auto& [cat, lp] : m.f2_logp) f2[cat] = lp;
  j["f2_logp"] = std::move(f2);
  j["f2_unseen_logp"] = m.f2_unseen_logp;
  return j;
}

NbClassModel nb_class_from_json(const ordered_json& j) {
  NbClassModel m;
  for (const auto& cj : j.at("components")) {
    NbComponentModel c;
    c.name = cj.at("name").get<std::string>();
    const auto& lp = cj.at("logp");
    for (std::size_t d = 0; d < c.logp.size(); ++d) c.logp[d] = lp.at(d);
    m.components.push_back(std::move(c));
  }
  for (const auto& [cat, lp] : j.at("f2_logp").items()) {
    m.f2_logp[cat] = lp.get<double>();
  }
  m.f2_unseen_logp = j.at("f2_unseen_logp").get<double>();
  return m;
}

}  // namespace

std::string save_model(const OneClassModel& model,
                       const std::string& config_fingerprint) {
  ordered_json j;
  j["format"] = "intent-cascade-model";
  j["format_version"] = kModelFormatVersion;
  j["algorithm"] = std::string(to_string(model.algorithm));
  ordered_json groups = ordered_json::array();
  for (const auto g : all_feature_groups()) {
    if (model.schema.has(g)) groups.push_back(std::string(to_string(g)));
  }
  j["schema"] = {{"groups", std::move(groups)},
                 {"digest", model.training_digest}};
  j["seed"] = model.rng_seed;
  j["decision_threshold"] = model.decision_threshold;
  j["config_fingerprint"] = config_fingerprint;

  if (model.algorithm == Algorithm::nb) {
    j["nb"] = nb_class_json(model.nb);
    if (model.nb_negative) j["nb_negative"] = nb_class_json(*model.nb_negative);
  } else {
    ordered_json features = ordered_json::array();
    for (const auto& f : model.tree_features) {
      if (f.component >= 0) {
        features.push_back(
            {{"component",
              std::string(component_catalog()[static_cast<std::size_t>(
                              f.component)].name)}});
      } else {
        features.push_back({{"f2_category", f.f2_category}});
      }
    }
    j["tree_features"] = std::move(features);
    ordered_json trees = ordered_json::array();
    for (const auto& tree : model.trees) {
      ordered_json nodes = ordered_json::array();
      for (const auto& n : tree.nodes) {
        ordered_json nj;
        nj["feature"] = n.feature;
        nj["threshold"] = n.threshold;
        nj["left"] = n.left;
        nj["right"] = n.right;
        nj["positive_fraction"] = n.positive_fraction;
        nj["count"] = n.sample_count;
        nodes.push_back(std::move(nj));
      }
      trees.push_back(std::move(nodes));
    }
    j["trees"] = std::move(trees);
  }
  return j.dump(2) + "\n";
}

OneClassModel load_model(const std::string& json_text) {
  const auto j = ordered_json::parse(json_text);
  if (j.at("format").get<std::string>() != "intent-cascade-model") {
    throw std::runtime_error("not an intent-cascade model file");
  }
  if (j.at("format_version").get<int>() != kModelFormatVersion) {
    throw std::runtime_error(
        "unsupported model format version " +
        std::to_string(j.at("format_version").get<int>()));
  }
  OneClassModel model;
  const auto algorithm = algorithm_from(j.at("algorithm").get<std::string>());
  if (!algorithm) throw std::runtime_error("unknown algorithm in model file");
  model.algorithm = *algorithm;

  model.schema.active.clear();
  for (const auto& g : j.at("schema").at("groups")) {
    const auto group = feature_group_from(g.get<std::string>());
    if (!group) throw std::runtime_error("unknown feature group in model");
    model.schema.active.insert(*group);
  }
  model.training_digest = j.at("schema").at("digest").get<std::string>();
  if (model.training_digest != model.schema.digest()) {
    throw std::runtime_error(
        "model schema mismatch: file digest " + model.training_digest +
        " does not match this build's feature layout");
  }
  model.rng_seed = j.at("seed").get<std::uint64_t>();
  model.decision_threshold = j.at("decision_threshold").get<double>();

  if (model.algorithm == Algorithm::nb) {
    model.nb = nb_class_from_json(j.at("nb"));
    if (j.contains("nb_negative")) {
      model.nb_negative = nb_class_from_json(j.at("nb_negative"));
    }
    return model;
  }

  std::map<std::string, int> by_name;
  const auto& catalog = component_catalog();
  for (std::size_t i = 0; i < catalog.size(); ++i) {
    by_name.emplace(std::string(catalog[i].name), static_cast<int>(i));
  }
  for (const auto& fj : j.at("tree_features")) {
    TreeFeature f;
    if (fj.contains("component")) {
      const auto it = by_name.find(fj.at("component").get<std::string>());
      if (it == by_name.end()) {
        throw std::runtime_error("unknown component in model file");
      }
      f.component = it->second;
    } else {
      f.f2_category = fj.at("f2_category").get<std::string>();
    }
    model.tree_features.push_back(std::move(f));
  }
  for (const auto& tj : j.at("trees")) {
    TreeModel tree;
    for (const auto& nj : tj) {
      TreeNode n;
      n.feature = nj.at("feature").get<int>();
      n.threshold = nj.at("threshold").get<double>();
      n.left = nj.at("left").get<int>();
      n.right = nj.at("right").get<int>();
      n.positive_fraction = nj.at("positive_fraction").get<double>();
      n.sample_count = nj.at("count").get<int>();
      tree.nodes.push_back(n);
    }
    model.trees.push_back(std::move(tree));
  }
  return model;
}

// --- Cross validation ----------------------------------------------------------------

FoldPlan make_fold_plan(const std::vector<LabeledVector>& vectors, int k,
                        std::uint64_t seed) {
  if (k < 2) throw std::invalid_argument("cross validation requires k >= 2");
  std::vector<std::string> positives;
  std::vector<std::string> negatives;
  for (const auto& v : vectors) {
    (v.positive ? positives : negatives).push_back(v.id);
  }
  if (positives.size() < static_cast<std::size_t>(k)) {
    throw std::invalid_argument(
        "fewer positive examples (" + std::to_string(positives.size()) +
        ") than folds (" + std::to_string(k) + ")");
  }
  std::sort(positives.begin(), positives.end());
  std::sort(negatives.begin(), negatives.end());

  FoldPlan plan;
  plan.k = k;
  plan.rng_seed = seed;
  Rng rng(seed);
  rng.shuffle(positives);
  rng.shuffle(negatives);
  for (std::size_t i = 0; i < positives.size(); ++i) {
    if (!plan.assignment.emplace(positives[i], static_cast<int>(i % k)).second)
      throw std::invalid_argument("duplicate post id: " + positives[i]);
  }
  for (std::size_t i = 0; i < negatives.size(); ++i) {
    if (!plan.assignment.emplace(negatives[i], static_cast<int>(i % k)).second)
      throw std::invalid_argument("duplicate post id: " + negatives[i]);
  }
  return plan;
}

double CvResult::pooled_precision() const { return precision(pooled); }
double CvResult::pooled_recall() const { return recall(pooled); }

CvResult cross_validate(const std::vector<LabeledVector>& vectors, int k,
                        Algorithm algorithm, const TrainConfig& config,
                        std::uint64_t seed) {
  CvResult result;
  result.plan = make_fold_plan(vectors, k, seed);

  std::vector<std::uint64_t> fold_seeds;
  Rng seeder(seed);
  for (int f = 0; f < k; ++f) fold_seeds.push_back(seeder.next());

  for (int f = 0; f < k; ++f) {
    std::vector<FeatureVector> train_pos;
    std::vector<FeatureVector> train_neg;
    std::vector<const LabeledVector*> held_out;
    for (const auto& v : vectors) {
      if (result.plan.assignment.at(v.id) == f) {
        held_out.push_back(&v);
      } else if (v.positive) {
        train_pos.push_back(v.vector);
      } else if (config.supervised) {
        train_neg.push_back(v.vector);
      }
    }
    TrainConfig fold_config = config;
    fold_config.seed = fold_seeds[static_cast<std::size_t>(f)];
    const OneClassModel model =
        train(algorithm, train_pos, fold_config, train_neg);

    ConfusionMatrix fold_matrix;
    for (const auto* v : held_out) {
      const double s = score(model, v->vector);
      result.scores.emplace(v->id, s);
      const bool predicted = s >= model.decision_threshold;
      if (predicted && v->positive) ++fold_matrix.tp;
      if (predicted && !v->positive) ++fold_matrix.fp;
      if (!predicted && v->positive) ++fold_matrix.fn;
      if (!predicted && !v->positive) ++fold_matrix.tn;
    }
    result.folds.push_back(fold_matrix);
    result.pooled += fold_matrix;
  }
  return result;
}

// --- Cascade ---------------------------------------------------------------------------

std::vector<CascadeOutcome> run_cascade(
    const std::vector<PostFeatures>& features, const TopicWhitelist& whitelist,
    int top_k, const OneClassModel& model) {
  std::vector<CascadeOutcome> out;
  out.reserve(features.size());
  for (const auto& f : features) {
    CascadeOutcome o;
    o.post_id = f.post_id;
    o.topic = topic_classify(f.taxonomy, f.concepts, whitelist, top_k);
    if (o.topic == TopicLabel::topic) {
      o.intent_score = score(model, f.vector);
      o.intent = o.intent_score >= model.decision_threshold
                     ? IntentLabel::intent
                     : IntentLabel::unknown;
    }
    out.push_back(std::move(o));
  }
  return out;
}

}  // namespace cascade
