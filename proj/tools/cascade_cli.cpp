// Command-line driver for the intent-cascade pipeline: corpus ingestion,
// tag-graph bootstrapping, annotator agreement, feature extraction, one-class
// training, cascaded classification, evaluation and feature ablation.

#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "cascade/ablation.hpp"
#include "cascade/annotation.hpp"
#include "cascade/bootstrap.hpp"
#include "cascade/classify.hpp"
#include "cascade/config.hpp"
#include "cascade/corpus.hpp"
#include "cascade/eval.hpp"
#include "cascade/features.hpp"
#include "cascade/fixture.hpp"
#include "cascade/text.hpp"

namespace {

using namespace cascade;

struct CliError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CliError("cannot read " + path.string());
  return in;
}

std::ofstream open_output(const std::filesystem::path& path) {
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path());
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw CliError("cannot write " + path.string());
  return out;
}

void write_fingerprinted(const std::filesystem::path& path,
                         const std::string& fingerprint,
                         const std::function<void(std::ostream&)>& body) {
  auto out = open_output(path);
  out << "# config_fingerprint=" << fingerprint << "\n";
  body(out);
}

InputFormat parse_format(const std::string& name) {
  if (name == "jsonl") return InputFormat::jsonl;
  if (name == "csv") return InputFormat::csv;
  throw CliError("unknown input format: " + name);
}

Dataset load_dataset(const std::filesystem::path& posts,
                     const std::filesystem::path& bloggers,
                     const std::string& format) {
  auto in = open_input(posts);
  auto result = ingest(in, parse_format(format));
  if (!result.rejects.empty()) {
    std::cerr << "warning: " << result.rejects.size()
              << " malformed records skipped while loading " << posts
              << "\n";
  }
  if (!bloggers.empty()) {
    auto bin = open_input(bloggers);
    ingest_bloggers(bin, parse_format(format), result.dataset);
  }
  return std::move(result.dataset);
}

// Ground-truth labels: post_id,topic_label,intent_label with the annotation
// vocabulary (topic/na, intent/na, empty intent for non-topic rows).
struct TruthLabels {
  std::map<std::string, bool> topic;
  std::map<std::string, bool> intent;
};

TruthLabels read_labels_csv(const std::filesystem::path& path) {
  auto in = open_input(path);
  CsvReader reader(in);
  auto header = reader.next();
  const std::vector<std::string> expected = {"post_id", "topic_label",
                                             "intent_label"};
  if (!header || *header != expected) {
    throw CliError("labels csv header mismatch in " + path.string());
  }
  TruthLabels labels;
  while (auto record = reader.next()) {
    if (record->size() != 3) {
      throw CliError("labels csv: wrong field count at line " +
                     std::to_string(reader.record_line()));
    }
    const std::string& id = (*record)[0];
    const bool topic = (*record)[1] == "topic";
    if (!topic && (*record)[1] != "na") {
      throw CliError("labels csv: bad topic_label at line " +
                     std::to_string(reader.record_line()));
    }
    labels.topic[id] = topic;
    labels.intent[id] = (*record)[2] == "intent";
  }
  if (labels.topic.empty()) throw CliError("empty input: " + path.string());
  return labels;
}

void write_labels_csv(const CascadeFixture& fx,
                      const std::filesystem::path& path) {
  auto out = open_output(path);
  out << "post_id,topic_label,intent_label\n";
  for (const auto& [id, topic] : fx.topic_truth) {
    out << id << ',' << (topic ? "topic" : "na") << ',';
    if (topic) out << (fx.intent_truth.at(id) ? "intent" : "na");
    out << "\n";
  }
}

std::vector<PostFeatures> read_features_jsonl(
    const std::filesystem::path& path) {
  auto in = open_input(path);
  std::vector<PostFeatures> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    out.push_back(post_features_from_json(line));
  }
  return out;
}

struct Prediction {
  std::string post_id;
  TopicLabel topic = TopicLabel::unknown;
  double intent_score = 0.0;
  IntentLabel intent = IntentLabel::unknown;
};

std::vector<Prediction> read_predictions_csv(
    const std::filesystem::path& path) {
  auto in = open_input(path);
  CsvReader reader(in);
  std::vector<Prediction> out;
  bool header_seen = false;
  while (auto record = reader.next()) {
    if ((*record)[0].starts_with("#")) continue;
    if (!header_seen) {
      header_seen = true;  // post_id,topic_label,intent_score,intent_label
      continue;
    }
    if (record->size() != 4) {
      throw CliError("predictions csv: wrong field count at line " +
                     std::to_string(reader.record_line()));
    }
    Prediction p;
    p.post_id = (*record)[0];
    p.topic = (*record)[1] == "topic" ? TopicLabel::topic : TopicLabel::unknown;
    p.intent_score = std::stod((*record)[2]);
    p.intent =
        (*record)[3] == "intent" ? IntentLabel::intent : IntentLabel::unknown;
    out.push_back(std::move(p));
  }
  if (out.empty()) throw CliError("empty input: " + path.string());
  return out;
}

TrainConfig train_config_from(const RunConfig& config) {
  TrainConfig tc;
  tc.nb_tau = config.decision_tau;
  tc.tree_threshold = config.tree_threshold;
  tc.supervised = config.supervised;
  tc.seed = config.seed;
  return tc;
}

Algorithm algorithm_from_config(const RunConfig& config) {
  const auto algorithm = algorithm_from(config.algorithm);
  if (!algorithm) throw CliError("unknown algorithm: " + config.algorithm);
  return *algorithm;
}

// --- Subcommand bodies ----------------------------------------------------

int cmd_ingest(const RunConfig& config, const std::string& format,
               bool skip_dedup, bool skip_language_filter) {
  const std::string fingerprint = config_fingerprint(config);
  auto in = open_input(config.corpus);
  auto result = ingest(in, parse_format(format));
  if (!config.bloggers.empty()) {
    auto bin = open_input(config.bloggers);
    ingest_bloggers(bin, parse_format(format), result.dataset);
  }
  const std::size_t ingested = result.dataset.posts.size();

  write_fingerprinted(config.out_dir / "rejects.jsonl", fingerprint,
                      [&](std::ostream& out) {
                        write_rejects_jsonl(result.rejects, out);
                      });

  std::size_t removed = 0;
  Dataset dataset = std::move(result.dataset);
  if (!skip_dedup) {
    auto dedup = deduplicate(dataset);
    removed = dedup.removed_count;
    dataset = std::move(dedup.dataset);
  }

  CorpusStats stats;
  if (!skip_language_filter) {
    const auto detector = LanguageDetector::load(config.data_dir / "lang");
    auto filtered = filter_english(dataset, detector);
    stats = filtered.stats;
    dataset = std::move(filtered.dataset);
  } else {
    stats = compute_stats(dataset);
  }

  write_fingerprinted(config.out_dir / "dataset.jsonl", fingerprint,
                      [&](std::ostream& out) {
                        write_posts_jsonl(dataset, out);
                      });
  write_fingerprinted(config.out_dir / "bloggers.jsonl", fingerprint,
                      [&](std::ostream& out) {
                        write_bloggers_jsonl(dataset, out);
                      });

  nlohmann::ordered_json j;
  j["config_fingerprint"] = fingerprint;
  j["ingested_posts"] = ingested;
  j["rejected_records"] = result.rejects.size();
  j["duplicates_removed"] = removed;
  j["total_posts"] = stats.total_posts;
  j["english_posts"] = stats.english_posts;
  j["non_english_posts"] = stats.non_english_posts;
  j["unknown_language_posts"] = stats.unknown_language_posts;
  j["url_only_posts"] = stats.url_only_posts;
  j["retained_posts"] = dataset.posts.size();
  j["description_word_buckets"] = stats.description_words.counts;
  j["tag_word_buckets"] = stats.tag_words.counts;
  open_output(config.out_dir / "corpus_stats.json") << j.dump(2) << "\n";

  std::cout << "ingested " << ingested << " posts, rejected "
            << result.rejects.size() << ", removed " << removed
            << " duplicates, retained " << dataset.posts.size() << "\n";
  return 0;
}

int cmd_bootstrap(const RunConfig& config, const std::string& format,
                  const std::vector<std::string>& seeds,
                  std::size_t max_posts, std::size_t per_tag_limit) {
  const std::string fingerprint = config_fingerprint(config);
  const Dataset dataset =
      load_dataset(config.corpus, config.bloggers, format);
  const TagIndex index = build_tag_index(dataset);
  const auto result =
      bootstrap_collect(dataset, index, seeds, max_posts, per_tag_limit);

  write_fingerprinted(config.out_dir / "bootstrap_dataset.jsonl", fingerprint,
                      [&](std::ostream& out) {
                        write_posts_jsonl(result.dataset, out);
                      });
  open_output(config.out_dir / "crawl_trace.json")
      << crawl_trace_json(result.trace, fingerprint);

  std::cout << "collected " << result.trace.collected_post_ids.size()
            << " posts over " << result.trace.rounds << " rounds, converged="
            << (result.trace.converged ? "true" : "false") << "\n";
  return 0;
}

int cmd_agreement(const RunConfig& config,
                  const std::filesystem::path& annotations) {
  auto in = open_input(annotations);
  const auto records = read_annotations_csv(in);
  if (records.empty()) throw CliError("empty input: " + annotations.string());
  const auto study = build_study(records);

  auto print = [](const char* stage, const AgreementTable& table) {
    const auto kappa = cohens_kappa(table);
    std::cout << stage << ": both=" << table.both_positive
              << " a_only=" << table.a_only << " b_only=" << table.b_only
              << " neither=" << table.both_negative << "\n";
    char line[160];
    std::snprintf(line, sizeof(line),
                  "%s: Po=%.4f Pe=%.4f kappa=%.4f\n", stage,
                  kappa.observed_agreement, kappa.expected_agreement,
                  kappa.kappa);
    std::cout << line;
  };
  print("topic", study.topic);
  print("intent", study.intent);

  nlohmann::ordered_json j;
  j["config_fingerprint"] = config_fingerprint(config);
  for (const auto& [stage, table] :
       {std::pair<const char*, const AgreementTable*>{"topic", &study.topic},
        {"intent", &study.intent}}) {
    const auto kappa = cohens_kappa(*table);
    j[stage] = {{"both_positive", table->both_positive},
                {"a_only", table->a_only},
                {"b_only", table->b_only},
                {"both_negative", table->both_negative},
                {"observed_agreement", kappa.observed_agreement},
                {"expected_agreement", kappa.expected_agreement},
                {"kappa", kappa.kappa}};
  }
  open_output(config.out_dir / "agreement.json") << j.dump(2) << "\n";
  return 0;
}

int cmd_extract(const RunConfig& config, const std::string& format) {
  const std::string fingerprint = config_fingerprint(config);
  const Dataset dataset =
      load_dataset(config.corpus, config.bloggers, format);
  const auto lexicons = Lexicons::load(config.data_dir / "lexicons");
  write_fingerprinted(
      config.out_dir / "features.jsonl", fingerprint,
      [&](std::ostream& out) {
        for (const auto& post : dataset.posts) {
          out << post_features_json(extract_features(post, lexicons)) << "\n";
        }
      });
  std::cout << "extracted features for " << dataset.posts.size()
            << " posts\n";
  return 0;
}

int cmd_train(const RunConfig& config, const std::filesystem::path& features,
              const std::filesystem::path& labels) {
  const auto all = read_features_jsonl(features);
  const auto truth = read_labels_csv(labels);
  std::vector<FeatureVector> positives;
  std::vector<FeatureVector> negatives;
  for (const auto& f : all) {
    const auto it = truth.intent.find(f.post_id);
    if (it == truth.intent.end()) continue;
    (it->second ? positives : negatives).push_back(f.vector);
  }
  if (positives.empty()) throw CliError("no positive training posts");

  const auto model = train(algorithm_from_config(config), positives,
                           train_config_from(config),
                           config.supervised ? negatives
                                             : std::vector<FeatureVector>{});
  const std::filesystem::path path =
      config.model.empty() ? config.out_dir / "model.json" : config.model;
  open_output(path) << save_model(model, config_fingerprint(config));
  std::cout << "trained " << config.algorithm << " on " << positives.size()
            << " positive posts, threshold=" << model.decision_threshold
            << "\n";
  return 0;
}

int cmd_classify(const RunConfig& config,
                 const std::filesystem::path& features,
                 const std::filesystem::path& labels) {
  const std::string fingerprint = config_fingerprint(config);
  const auto all = read_features_jsonl(features);
  std::ifstream model_in(config.model);
  if (!model_in) throw CliError("cannot read " + config.model.string());
  std::ostringstream model_text;
  model_text << model_in.rdbuf();
  const auto model = load_model(model_text.str());

  TopicWhitelist whitelist = TopicWhitelist::defaults();
  if (!labels.empty()) {
    // Build the fallback concept lexicon from labeled topic posts.
    const auto truth = read_labels_csv(labels);
    for (const auto& f : all) {
      const auto it = truth.topic.find(f.post_id);
      if (it != truth.topic.end() && it->second) {
        whitelist.harvest_concepts(f.concepts);
      }
    }
  }

  const auto outcomes = run_cascade(all, whitelist, config.top_k, model);
  write_fingerprinted(
      config.out_dir / "predictions.csv", fingerprint,
      [&](std::ostream& out) {
        out << "post_id,topic_label,intent_score,intent_label\n";
        char line[64];
        for (const auto& o : outcomes) {
          std::snprintf(line, sizeof(line), "%.9f", o.intent_score);
          out << o.post_id << ','
              << (o.topic == TopicLabel::topic ? "topic" : "unknown") << ','
              << line << ','
              << (o.intent == IntentLabel::intent ? "intent" : "unknown")
              << "\n";
        }
      });

  std::size_t topic_count = 0;
  std::size_t intent_count = 0;
  for (const auto& o : outcomes) {
    topic_count += o.topic == TopicLabel::topic;
    intent_count += o.intent == IntentLabel::intent;
  }
  std::cout << "classified " << outcomes.size() << " posts: " << topic_count
            << " topic, " << intent_count << " intent\n";
  return 0;
}

int cmd_evaluate(const RunConfig& config,
                 const std::filesystem::path& predictions,
                 const std::filesystem::path& labels) {
  const auto preds = read_predictions_csv(predictions);
  const auto truth = read_labels_csv(labels);

  // Stage-1 confusion over every post with ground truth.
  std::map<std::string, bool> topic_predicted;
  std::map<std::string, bool> topic_actual;
  for (const auto& p : preds) {
    const auto it = truth.topic.find(p.post_id);
    if (it == truth.topic.end()) continue;
    topic_predicted[p.post_id] = p.topic == TopicLabel::topic;
    topic_actual[p.post_id] = it->second;
  }
  if (topic_predicted.empty()) throw CliError("empty input: no overlap");
  const auto topic_matrix = confusion(topic_predicted, topic_actual);

  // Intent metrics over the selected condition: testdata1 = all stage-1
  // positives, testdata2 = stage-1 true positives only.
  std::map<std::string, bool> intent_predicted;
  std::map<std::string, bool> intent_actual;
  std::map<std::string, double> intent_scores;
  for (const auto& p : preds) {
    if (p.topic != TopicLabel::topic) continue;
    const auto it = truth.topic.find(p.post_id);
    if (it == truth.topic.end()) continue;
    if (config.condition == "testdata2" && !it->second) continue;
    intent_predicted[p.post_id] = p.intent == IntentLabel::intent;
    intent_actual[p.post_id] = truth.intent.at(p.post_id);
    intent_scores[p.post_id] = p.intent_score;
  }

  ReportInputs inputs;
  inputs.config_fingerprint = config_fingerprint(config);
  inputs.seed = config.seed;
  inputs.condition = config.condition;
  if (!intent_predicted.empty()) {
    inputs.matrix = confusion(intent_predicted, intent_actual);
    bool has_pos = false;
    bool has_neg = false;
    for (const auto& [id, a] : intent_actual) (a ? has_pos : has_neg) = true;
    if (has_pos && has_neg) inputs.roc = roc_auc(intent_scores, intent_actual);
  }
  emit_report(inputs, config.out_dir);

  std::cout << "stage1 topic: tp=" << topic_matrix.tp
            << " fp=" << topic_matrix.fp << " fn=" << topic_matrix.fn
            << " tn=" << topic_matrix.tn << "\n";
  if (inputs.matrix) {
    char line[160];
    std::snprintf(line, sizeof(line),
                  "intent (%s): precision=%.4f recall=%.4f n=%lld\n",
                  config.condition.c_str(),
                  inputs.matrix->tp + inputs.matrix->fp
                      ? precision(*inputs.matrix)
                      : 0.0,
                  inputs.matrix->tp + inputs.matrix->fn
                      ? recall(*inputs.matrix)
                      : 0.0,
                  static_cast<long long>(inputs.matrix->total()));
    std::cout << line;
  }
  std::cout << "report written to " << config.out_dir.string() << "\n";
  return 0;
}

int cmd_ablate(const RunConfig& config, const std::filesystem::path& features,
               const std::filesystem::path& labels, int p) {
  const auto all = read_features_jsonl(features);
  const auto truth = read_labels_csv(labels);

  // Ablation studies the intent stage, so it runs over ground-truth topic
  // posts with the intent label as the class.
  std::vector<LabeledVector> vectors;
  for (const auto& f : all) {
    const auto it = truth.topic.find(f.post_id);
    if (it == truth.topic.end() || !it->second) continue;
    vectors.push_back({f.post_id, f.vector, truth.intent.at(f.post_id)});
  }
  if (vectors.empty()) throw CliError("no labeled topic posts to ablate");

  ReportInputs inputs;
  inputs.config_fingerprint = config_fingerprint(config);
  inputs.seed = config.seed;
  inputs.condition = "ablation";
  for (const int pp : p == 0 ? std::vector<int>{1, 2} : std::vector<int>{p}) {
    inputs.ablations.push_back(ablate(vectors, algorithm_from_config(config),
                                      pp, config.seed,
                                      train_config_from(config), config.cv_k));
  }
  emit_report(inputs, config.out_dir);
  for (const auto& report : inputs.ablations) {
    std::cout << "p=" << report.p << " baseline precision "
              << report.baseline_precision << ", " << report.rows.size()
              << " rows\n";
  }
  return 0;
}

int cmd_gen_fixture(const RunConfig& config, std::size_t cascade_total) {
  const std::string fingerprint = config_fingerprint(config);

  const auto stats = make_stats_fixture(config.seed);
  write_fingerprinted(config.out_dir / "stats/corpus.jsonl", fingerprint,
                      [&](std::ostream& out) {
                        write_posts_jsonl(stats.dataset, out);
                      });
  write_fingerprinted(config.out_dir / "stats/bloggers.jsonl", fingerprint,
                      [&](std::ostream& out) {
                        write_bloggers_jsonl(stats.dataset, out);
                      });
  open_output(config.out_dir / "stats/manifest.json")
      << stats_manifest_json(stats, fingerprint);

  const auto cascade = make_cascade_fixture(config.seed, cascade_total);
  write_fingerprinted(config.out_dir / "cascade/corpus.jsonl", fingerprint,
                      [&](std::ostream& out) {
                        write_posts_jsonl(cascade.dataset, out);
                      });
  write_fingerprinted(config.out_dir / "cascade/bloggers.jsonl", fingerprint,
                      [&](std::ostream& out) {
                        write_bloggers_jsonl(cascade.dataset, out);
                      });
  write_labels_csv(cascade, config.out_dir / "cascade/labels.csv");
  open_output(config.out_dir / "cascade/manifest.json")
      << cascade_manifest_json(cascade, fingerprint);

  const auto language = make_language_fixture(config.seed);
  write_fingerprinted(config.out_dir / "language/corpus.jsonl", fingerprint,
                      [&](std::ostream& out) {
                        write_posts_jsonl(language.dataset, out);
                      });
  open_output(config.out_dir / "language/manifest.json")
      << language_manifest_json(language, fingerprint);

  auto annotations = open_output(config.out_dir / "agreement/annotations.csv");
  write_annotations_csv(make_agreement_fixture(), annotations);

  std::cout << "fixtures written to " << config.out_dir.string() << " (stats "
            << stats.dataset.posts.size() << " posts, cascade "
            << cascade.dataset.posts.size() << " posts)\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "intent-cascade: two-stage topic/intent classification pipeline for "
      "microblog posts"};
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::help);

  RunConfig config;
  std::string config_file;
  std::string format = "jsonl";

  // The config file loads before flag parsing so that flags bound below
  // override its values.
  for (int i = 1; i < argc; ++i) {
    const std::string_view arg = argv[i];
    if (arg == "--config" && i + 1 < argc) {
      config_file = argv[i + 1];
    } else if (arg.starts_with("--config=")) {
      config_file = std::string(arg.substr(9));
    }
  }
  if (!config_file.empty()) {
    try {
      config = load_config_file(config_file);
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return 2;
    }
  }
  std::string config_file_sink;
  app.add_option("--config", config_file_sink,
                 "flat key=value config file; flags override its values")
      ->check(CLI::ExistingFile);

  // Shared overrides (same keys as the config file).
  auto add_common = [&](CLI::App* cmd) {
    cmd->fallthrough();  // top-level flags (e.g. --config) work anywhere
    cmd->add_option("--data-dir", config.data_dir,
                    "bundled lexicons/profiles directory");
    cmd->add_option("--out-dir", config.out_dir, "artifact output directory");
    cmd->add_option("--seed", config.seed, "rng seed");
    cmd->add_option("--algorithm", config.algorithm, "nb | dt | rf");
    cmd->add_option("--top-k", config.top_k, "concept fallback depth");
    cmd->add_option("--decision-tau", config.decision_tau,
                    "nb threshold quantile");
    cmd->add_option("--tree-threshold", config.tree_threshold,
                    "dt/rf decision threshold");
    cmd->add_option("--cv-k", config.cv_k, "cross-validation folds");
    cmd->add_option("--condition", config.condition,
                    "testdata1 | testdata2");
    cmd->add_flag("--supervised", config.supervised,
                  "train against explicit negatives");
  };

  // ingest
  auto* ingest_cmd =
      app.add_subcommand("ingest", "load, deduplicate and language-filter a corpus");
  bool skip_dedup = false;
  bool skip_language_filter = false;
  ingest_cmd->add_option("--posts", config.corpus, "post records")->required();
  ingest_cmd->add_option("--bloggers", config.bloggers, "blogger records");
  ingest_cmd->add_option("--format", format, "jsonl | csv");
  ingest_cmd->add_flag("--skip-dedup", skip_dedup,
                       "keep duplicate descriptions");
  ingest_cmd->add_flag("--skip-language-filter", skip_language_filter,
                       "keep non-English posts");
  add_common(ingest_cmd);

  // bootstrap
  auto* bootstrap_cmd = app.add_subcommand(
      "bootstrap", "breadth-first tag expansion over a local corpus");
  std::vector<std::string> seeds;
  std::size_t max_posts = 400;
  std::size_t per_tag_limit = 20;
  bootstrap_cmd->add_option("--dataset", config.corpus, "backing corpus")
      ->required();
  bootstrap_cmd->add_option("--bloggers", config.bloggers, "blogger records");
  bootstrap_cmd->add_option("--format", format, "jsonl | csv");
  bootstrap_cmd->add_option("--seeds", seeds, "seed tags")
      ->required()
      ->delimiter(',');
  bootstrap_cmd->add_option("--max-posts", max_posts, "collection budget");
  bootstrap_cmd->add_option("--per-tag-limit", per_tag_limit,
                            "newest posts taken per tag");
  add_common(bootstrap_cmd);

  // agreement
  auto* agreement_cmd = app.add_subcommand(
      "agreement", "inter-annotator agreement tables and Cohen's kappa");
  std::filesystem::path annotations;
  agreement_cmd->add_option("--annotations", annotations, "annotation csv")
      ->required();
  add_common(agreement_cmd);

  // extract
  auto* extract_cmd = app.add_subcommand(
      "extract", "lexicon-driven feature extraction to features.jsonl");
  extract_cmd->add_option("--dataset", config.corpus, "corpus")->required();
  extract_cmd->add_option("--bloggers", config.bloggers, "blogger records");
  extract_cmd->add_option("--format", format, "jsonl | csv");
  add_common(extract_cmd);

  // train
  auto* train_cmd =
      app.add_subcommand("train", "train a one-class intent model");
  std::filesystem::path features_path;
  std::filesystem::path labels_path;
  train_cmd->add_option("--features", features_path, "features.jsonl")
      ->required();
  train_cmd->add_option("--labels", labels_path, "ground-truth labels csv")
      ->required();
  train_cmd->add_option("--model", config.model, "model output path");
  add_common(train_cmd);

  // classify
  auto* classify_cmd = app.add_subcommand(
      "classify", "run the two-stage cascade over extracted features");
  std::filesystem::path harvest_labels;
  classify_cmd->add_option("--features", features_path, "features.jsonl")
      ->required();
  classify_cmd->add_option("--model", config.model, "trained model json")
      ->required();
  classify_cmd->add_option(
      "--harvest-labels", harvest_labels,
      "labels csv; topic posts feed the concept fallback lexicon");
  add_common(classify_cmd);

  // evaluate
  auto* evaluate_cmd = app.add_subcommand(
      "evaluate", "score predictions against ground truth, emit reports");
  std::filesystem::path predictions_path;
  evaluate_cmd
      ->add_option("--predictions", predictions_path, "predictions csv")
      ->required();
  evaluate_cmd->add_option("--labels", labels_path, "ground-truth labels csv")
      ->required();
  add_common(evaluate_cmd);

  // ablate
  auto* ablate_cmd = app.add_subcommand(
      "ablate", "leave-p-out feature-group ablation of the intent stage");
  int ablate_p = 0;  // 0 = both 1 and 2
  ablate_cmd->add_option("--features", features_path, "features.jsonl")
      ->required();
  ablate_cmd->add_option("--labels", labels_path, "ground-truth labels csv")
      ->required();
  ablate_cmd->add_option("--p", ablate_p, "groups left out per run (1 or 2)");
  add_common(ablate_cmd);

  // gen-fixture
  auto* fixture_cmd = app.add_subcommand(
      "gen-fixture", "emit the seeded synthetic corpora and manifests");
  std::size_t cascade_total = 500;
  fixture_cmd->add_option("--cascade-posts", cascade_total,
                          "cascade fixture size");
  add_common(fixture_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;  // usage error
  }

  if (config.data_dir.empty()) config.data_dir = default_data_dir();
  try {
    apply_env_seed(config);
    validate(config);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;  // invalid configuration
  }

  try {

    if (app.got_subcommand(ingest_cmd)) {
      return cmd_ingest(config, format, skip_dedup, skip_language_filter);
    }
    if (app.got_subcommand(bootstrap_cmd)) {
      return cmd_bootstrap(config, format, seeds, max_posts, per_tag_limit);
    }
    if (app.got_subcommand(agreement_cmd)) {
      return cmd_agreement(config, annotations);
    }
    if (app.got_subcommand(extract_cmd)) {
      return cmd_extract(config, format);
    }
    if (app.got_subcommand(train_cmd)) {
      return cmd_train(config, features_path, labels_path);
    }
    if (app.got_subcommand(classify_cmd)) {
      return cmd_classify(config, features_path, harvest_labels);
    }
    if (app.got_subcommand(evaluate_cmd)) {
      return cmd_evaluate(config, predictions_path, labels_path);
    }
    if (app.got_subcommand(ablate_cmd)) {
      return cmd_ablate(config, features_path, labels_path, ablate_p);
    }
    if (app.got_subcommand(fixture_cmd)) {
      return cmd_gen_fixture(config, cascade_total);
    }
    std::cerr << "error: unknown subcommand\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
