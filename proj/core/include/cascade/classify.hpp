#ifndef CASCADE_CLASSIFY_HPP_
#define CASCADE_CLASSIFY_HPP_

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cascade/eval.hpp"
#include "cascade/features.hpp"

namespace cascade {

// --- Stage 1: lookup topic classifier ---------------------------------------

enum class TopicLabel { topic, unknown };
enum class IntentLabel { intent, unknown };

struct TopicWhitelist {
  std::set<std::string> paths;            // taxonomy path strings
  std::set<std::string> concept_lexicon;  // case-folded concept names

  // The six finalized topic labels.
  static TopicWhitelist defaults();

  // Collect concepts of labeled topic posts into the fallback lexicon.
  void harvest_concepts(const std::vector<ConceptAssignment>& concepts);
};

// Topic if any assignment path is whitelisted; otherwise, when the post
// carries a wide range of taxonomies (>5), topic if any of the top_k
// concepts is in the harvested concept lexicon.
TopicLabel topic_classify(const std::vector<TaxonomyAssignment>& taxonomy,
                          const std::vector<ConceptAssignment>& concepts,
                          const TopicWhitelist& whitelist, int top_k = 3);

// --- Feature schema -----------------------------------------------------------

enum class FeatureGroup { f1, f2, f3, f4, f5 };

std::string_view to_string(FeatureGroup g);
std::optional<FeatureGroup> feature_group_from(std::string_view name);
const std::array<FeatureGroup, 5>& all_feature_groups();

// Which of F1..F5 a model consumes. Ablation removes groups here; the digest
// fingerprints the active layout so persisted models refuse foreign vectors.
struct FeatureSchema {
  std::set<FeatureGroup> active;

  static FeatureSchema all();
  static FeatureSchema without(const std::vector<FeatureGroup>& removed);
  bool has(FeatureGroup g) const { return active.contains(g); }
  std::string digest() const;

  friend bool operator==(const FeatureSchema&, const FeatureSchema&) = default;
};

// Categorical (non-F2) components of the vector space, in fixed order:
// f1, five f3 dimensions, three f4 dimensions, five f5 dimensions.
struct ComponentRef {
  std::string_view name;
  FeatureGroup group;
  int (*value)(const FeatureVector&);
};
constexpr int kComponentDomain = 5;
const std::vector<ComponentRef>& component_catalog();
std::vector<ComponentRef> active_components(const FeatureSchema& schema);

// --- One-class models -----------------------------------------------------------

enum class Algorithm { nb, dt, rf };

std::string_view to_string(Algorithm a);
std::optional<Algorithm> algorithm_from(std::string_view name);

struct TrainConfig {
  std::size_t min_train = 10;
  double nb_tau = 0.05;       // threshold quantile over training self-scores
  int rf_trees = 50;
  int max_depth = 8;
  int min_leaf = 2;
  double outlier_ratio = 1.0;    // synthetic outliers per positive
  double tree_threshold = 0.5;   // dt/rf decision threshold
  int f2_top_categories = 50;    // f2 count features offered to trees
  bool supervised = false;       // two-class training when negatives provided
  std::uint64_t seed = 1;
  FeatureSchema schema = FeatureSchema::all();
};

struct NbComponentModel {
  std::string name;
  std::array<double, kComponentDomain> logp{};
};

struct NbClassModel {
  std::vector<NbComponentModel> components;
  std::map<std::string, double> f2_logp;
  double f2_unseen_logp = 0.0;
};

struct TreeFeature {
  int component = -1;       // index into active_components, or -1
  std::string f2_category;  // used when component < 0
};

struct TreeNode {
  int feature = -1;  // split feature index; -1 marks a leaf
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  double positive_fraction = 0.0;
  int sample_count = 0;
};

struct TreeModel {
  std::vector<TreeNode> nodes;  // node 0 is the root
};

struct OneClassModel {
  Algorithm algorithm = Algorithm::nb;
  FeatureSchema schema = FeatureSchema::all();
  std::string training_digest;  // schema fingerprint
  double decision_threshold = 0.5;
  std::uint64_t rng_seed = 0;

  NbClassModel nb;                      // nb
  std::optional<NbClassModel> nb_negative;  // nb, supervised mode
  std::vector<TreeFeature> tree_features;   // dt/rf
  std::vector<TreeModel> trees;             // dt holds exactly one
};

// Trains a one-class model on positive vectors only. NB thresholds the
// positive-class density at the nb_tau quantile of training self-scores;
// DT/RF contrast the positives against seeded synthetic outliers drawn
// uniformly over the categorical domains. With config.supervised and
// explicit negatives, those replace the synthetic outliers.
OneClassModel train(Algorithm algorithm,
                    const std::vector<FeatureVector>& positives,
                    const TrainConfig& config,
                    const std::vector<FeatureVector>& negatives = {});

// Monotone confidence in [0,1] that the vector belongs to the positive
// class. NB: exp of the per-slot mean log-likelihood. DT: leaf positive
// fraction. RF: fraction of trees voting positive.
double score(const OneClassModel& model, const FeatureVector& vector);

// intent iff score >= decision_threshold.
IntentLabel classify_intent(const OneClassModel& model,
                            const FeatureVector& vector);

// Versioned JSON persistence; loading refuses mismatched schema versions.
std::string save_model(const OneClassModel& model,
                       const std::string& config_fingerprint = "");
OneClassModel load_model(const std::string& json_text);

// --- Cross validation -------------------------------------------------------------

struct LabeledVector {
  std::string id;
  FeatureVector vector;
  bool positive = false;
};

struct FoldPlan {
  int k = 5;
  std::map<std::string, int> assignment;  // post_id -> fold
  std::uint64_t rng_seed = 0;
};

// Stratified, seeded, deterministic. Fold sizes within each class differ by
// at most one.
FoldPlan make_fold_plan(const std::vector<LabeledVector>& vectors, int k,
                        std::uint64_t seed);

struct CvResult {
  FoldPlan plan;
  std::vector<ConfusionMatrix> folds;
  ConfusionMatrix pooled;
  std::map<std::string, double> scores;  // held-out score per post id

  double pooled_precision() const;
  double pooled_recall() const;
};

// K-fold cross validation: each fold's model trains on the remaining folds'
// positives (plus negatives when supervised) and is evaluated on the held-out
// fold with both classes. Requires k >= 2 and at least k positives.
CvResult cross_validate(const std::vector<LabeledVector>& vectors, int k,
                        Algorithm algorithm, const TrainConfig& config,
                        std::uint64_t seed);

// --- Cascade driver ---------------------------------------------------------------

struct CascadeOutcome {
  std::string post_id;
  TopicLabel topic = TopicLabel::unknown;
  double intent_score = 0.0;  // meaningful only for topic posts
  IntentLabel intent = IntentLabel::unknown;
};

// Stage 2 consumes only stage-1 positives, so intent-labeled posts are
// always a subset of topic-labeled posts.
std::vector<CascadeOutcome> run_cascade(
    const std::vector<PostFeatures>& features, const TopicWhitelist& whitelist,
    int top_k, const OneClassModel& model);

}  // namespace cascade

#endif  // CASCADE_CLASSIFY_HPP_
