#ifndef CASCADE_ABLATION_HPP_
#define CASCADE_ABLATION_HPP_

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "cascade/classify.hpp"
#include "cascade/eval.hpp"

namespace cascade {

struct AblationRow {
  std::vector<FeatureGroup> removed;  // the size-p subset left out
  double ablated_precision = 0.0;
  double ablated_recall = 0.0;
  double percent_fall = 0.0;  // 100*(baseline-ablated)/baseline precision;
                              // negative means the removal helped

  std::string removed_label() const;  // e.g. "F3" or "F2+F4"
};

struct AblationReport {
  int p = 1;
  double baseline_precision = 0.0;
  double baseline_recall = 0.0;
  std::vector<AblationRow> rows;  // C(5,p) rows, subsets in F1..F5 order
};

// Leave-p-out over the five feature groups: the baseline and every ablated
// run share one fold plan and seed, so precision differences are
// attributable to the removed groups alone. A run that predicts no
// positives reports precision 0.
AblationReport ablate(const std::vector<LabeledVector>& vectors,
                      Algorithm algorithm, int p, std::uint64_t seed,
                      const TrainConfig& config = {}, int k = 5);

// --- Report files -----------------------------------------------------------

struct ReportInputs {
  std::optional<ConfusionMatrix> matrix;
  std::optional<RocCurve> roc;
  std::vector<AblationReport> ablations;
  std::string config_fingerprint;
  std::uint64_t seed = 0;
  std::string condition;  // e.g. "testdata1" / "testdata2"
};

// Writes metrics.csv, roc_points.csv, ablation_p1.csv, ablation_p2.csv and
// summary.txt into out_dir. Missing inputs produce header-only files;
// identical inputs produce byte-identical files.
void emit_report(const ReportInputs& inputs,
                 const std::filesystem::path& out_dir);

}  // namespace cascade

#endif  // CASCADE_ABLATION_HPP_
