#include "cascade/eval.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace cascade {

namespace {

void append_ids(std::ostringstream& msg, const char* which,
                const std::vector<std::string>& ids) {
  if (ids.empty()) return;
  msg << " [" << which << " only:";
  std::size_t shown = 0;
  for (const auto& id : ids) {
    if (shown++ == 10) {
      msg << " ... (" << ids.size() << " total)";
      break;
    }
    msg << ' ' << id;
  }
  msg << ']';
}

[[noreturn]] void fail_ids(const char* a_name,
                           const std::vector<std::string>& a_ids,
                           const char* b_name,
                           const std::vector<std::string>& b_ids) {
  std::ostringstream msg;
  msg << "inputs cover different posts";
  append_ids(msg, a_name, a_ids);
  append_ids(msg, b_name, b_ids);
  throw std::invalid_argument(msg.str());
}

}  // namespace

ConfusionMatrix confusion(const std::map<std::string, bool>& predicted,
                          const std::map<std::string, bool>& actual) {
  if (predicted.empty() && actual.empty())
    throw std::invalid_argument("confusion matrix over empty input");
  std::vector<std::string> only_predicted;
  std::vector<std::string> only_actual;
  for (const auto& [id, v] : predicted) {
    if (!actual.contains(id)) only_predicted.push_back(id);
  }
  for (const auto& [id, v] : actual) {
    if (!predicted.contains(id)) only_actual.push_back(id);
  }
  if (!only_predicted.empty() || !only_actual.empty()) {
    fail_ids("predictions", only_predicted, "ground truth", only_actual);
  }

  ConfusionMatrix m;
  for (const auto& [id, p] : predicted) {
    const bool a = actual.at(id);
    if (p && a) {
      ++m.tp;
    } else if (p && !a) {
      ++m.fp;
    } else if (!p && a) {
      ++m.fn;
    } else {
      ++m.tn;
    }
  }
  return m;
}

double precision(const ConfusionMatrix& m) {
  if (m.tp + m.fp == 0)
    throw std::invalid_argument("precision undefined: no positive predictions");
  return static_cast<double>(m.tp) / static_cast<double>(m.tp + m.fp);
}

double recall(const ConfusionMatrix& m) {
  if (m.tp + m.fn == 0)
    throw std::invalid_argument("recall undefined: no positive labels");
  return static_cast<double>(m.tp) / static_cast<double>(m.tp + m.fn);
}

RocCurve roc_auc(const std::map<std::string, double>& scores,
                 const std::map<std::string, bool>& actual) {
  std::vector<std::string> only_scores;
  std::vector<std::string> only_actual;
  for (const auto& [id, s] : scores) {
    if (!actual.contains(id)) only_scores.push_back(id);
  }
  for (const auto& [id, a] : actual) {
    if (!scores.contains(id)) only_actual.push_back(id);
  }
  if (!only_scores.empty() || !only_actual.empty()) {
    fail_ids("scores", only_scores, "ground truth", only_actual);
  }

  std::int64_t positives = 0;
  std::int64_t negatives = 0;
  std::vector<std::pair<double, bool>> items;
  items.reserve(scores.size());
  for (const auto& [id, s] : scores) {
    const bool label = actual.at(id);
    label ? ++positives : ++negatives;
    items.emplace_back(s, label);
  }
  if (positives == 0 || negatives == 0) {
    throw std::invalid_argument(
        "roc requires both classes in the ground truth");
  }

  std::sort(items.begin(), items.end(),
            [](const auto& a, const auto& b) { return a.first > b.first; });

  RocCurve curve;
  curve.points.push_back({0.0, 0.0});
  std::int64_t tp = 0;
  std::int64_t fp = 0;
  double auc = 0.0;
  std::size_t i = 0;
  while (i < items.size()) {
    // Group equal scores into a single sweep step.
    const double score = items[i].first;
    while (i < items.size() && items[i].first == score) {
      items[i].second ? ++tp : ++fp;
      ++i;
    }
    const RocPoint prev = curve.points.back();
    const RocPoint next{static_cast<double>(fp) / negatives,
                        static_cast<double>(tp) / positives};
    auc += (next.fpr - prev.fpr) * (prev.tpr + next.tpr) / 2.0;
    curve.points.push_back(next);
  }
  curve.auc = auc;
  return curve;
}

}  // namespace cascade
