#include "cascade/ablation.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace cascade {

namespace {

double safe_precision(const ConfusionMatrix& m) {
  return m.tp + m.fp == 0 ? 0.0 : precision(m);
}

double safe_recall(const ConfusionMatrix& m) {
  return m.tp + m.fn == 0 ? 0.0 : recall(m);
}

std::string fmt(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", value);
  return buf;
}

std::ofstream open_artifact(const std::filesystem::path& path,
                            const std::string& fingerprint) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot write report file: " + path.string());
  }
  out << "# config_fingerprint=" << fingerprint << "\n";
  return out;
}

void write_ablation_csv(const std::filesystem::path& path,
                        const std::string& fingerprint,
                        const AblationReport* report) {
  auto out = open_artifact(path, fingerprint);
  out << "removed,baseline_precision,ablated_precision,percent_fall,"
         "baseline_recall,ablated_recall\n";
  if (!report) return;
  for (const auto& row : report->rows) {
    out << row.removed_label() << ',' << fmt(report->baseline_precision)
        << ',' << fmt(row.ablated_precision) << ',' << fmt(row.percent_fall)
        << ',' << fmt(report->baseline_recall) << ','
        << fmt(row.ablated_recall) << "\n";
  }
}

}  // namespace

std::string AblationRow::removed_label() const {
  std::string out;
  for (std::size_t i = 0; i < removed.size(); ++i) {
    if (i) out.push_back('+');
    out += to_string(removed[i]);
  }
  return out;
}

AblationReport ablate(const std::vector<LabeledVector>& vectors,
                      Algorithm algorithm, int p, std::uint64_t seed,
                      const TrainConfig& config, int k) {
  if (p != 1 && p != 2) {
    throw std::invalid_argument("leave-p-out supports p in {1,2}");
  }

  TrainConfig baseline_config = config;
  baseline_config.schema = FeatureSchema::all();
  const CvResult baseline =
      cross_validate(vectors, k, algorithm, baseline_config, seed);

  AblationReport report;
  report.p = p;
  report.baseline_precision = safe_precision(baseline.pooled);
  report.baseline_recall = safe_recall(baseline.pooled);
  if (report.baseline_precision == 0.0) {
    throw std::invalid_argument(
        "ablation baseline precision is zero; percent fall undefined");
  }

  const auto& groups = all_feature_groups();
  std::vector<std::vector<FeatureGroup>> subsets;
  if (p == 1) {
    for (const auto g : groups) subsets.push_back({g});
  } else {
    for (std::size_t i = 0; i < groups.size(); ++i) {
      for (std::size_t j = i + 1; j < groups.size(); ++j) {
        subsets.push_back({groups[i], groups[j]});
      }
    }
  }

  for (const auto& removed : subsets) {
    TrainConfig ablated_config = config;
    ablated_config.schema = FeatureSchema::without(removed);
    const CvResult run =
        cross_validate(vectors, k, algorithm, ablated_config, seed);
    AblationRow row;
    row.removed = removed;
    row.ablated_precision = safe_precision(run.pooled);
    row.ablated_recall = safe_recall(run.pooled);
    row.percent_fall = 100.0 *
                       (report.baseline_precision - row.ablated_precision) /
                       report.baseline_precision;
    report.rows.push_back(std::move(row));
  }
  return report;
}

void emit_report(const ReportInputs& inputs,
                 const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);

  {
    auto out = open_artifact(out_dir / "metrics.csv", inputs.config_fingerprint);
    out << "precision,recall,tp,fp,fn,tn,auc\n";
    if (inputs.matrix) {
      const auto& m = *inputs.matrix;
      out << fmt(safe_precision(m)) << ',' << fmt(safe_recall(m)) << ','
          << m.tp << ',' << m.fp << ',' << m.fn << ',' << m.tn << ',';
      if (inputs.roc) out << fmt(inputs.roc->auc);
      out << "\n";
    }
  }

  {
    auto out =
        open_artifact(out_dir / "roc_points.csv", inputs.config_fingerprint);
    out << "fpr,tpr\n";
    if (inputs.roc) {
      for (const auto& pt : inputs.roc->points) {
        out << fmt(pt.fpr) << ',' << fmt(pt.tpr) << "\n";
      }
    }
  }

  const AblationReport* p1 = nullptr;
  const AblationReport* p2 = nullptr;
  for (const auto& r : inputs.ablations) {
    if (r.p == 1) p1 = &r;
    if (r.p == 2) p2 = &r;
  }
  write_ablation_csv(out_dir / "ablation_p1.csv", inputs.config_fingerprint,
                     p1);
  write_ablation_csv(out_dir / "ablation_p2.csv", inputs.config_fingerprint,
                     p2);

  {
    auto out = open_artifact(out_dir / "summary.txt", inputs.config_fingerprint);
    out << "intent-cascade evaluation summary\n";
    out << "condition: " << (inputs.condition.empty() ? "-" : inputs.condition)
        << "\n";
    out << "seed: " << inputs.seed << "\n";
    if (inputs.matrix) {
      const auto& m = *inputs.matrix;
      out << "confusion: tp=" << m.tp << " fp=" << m.fp << " fn=" << m.fn
          << " tn=" << m.tn << "\n";
      out << "precision: " << fmt(safe_precision(m)) << "\n";
      out << "recall: " << fmt(safe_recall(m)) << "\n";
    }
    if (inputs.roc) out << "auc: " << fmt(inputs.roc->auc) << "\n";
    for (const auto& r : inputs.ablations) {
      out << "ablation p=" << r.p
          << " baseline_precision=" << fmt(r.baseline_precision)
          << " rows=" << r.rows.size() << "\n";
      for (const auto& row : r.rows) {
        out << "  -" << row.removed_label() << ": precision "
            << fmt(row.ablated_precision) << " (fall "
            << fmt(row.percent_fall) << "%)\n";
      }
    }
  }
}

}  // namespace cascade
