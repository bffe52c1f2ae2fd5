#ifndef CASCADE_EVAL_HPP_
#define CASCADE_EVAL_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace cascade {

struct ConfusionMatrix {
  std::int64_t tp = 0;
  std::int64_t fp = 0;
  std::int64_t fn = 0;
  std::int64_t tn = 0;

  std::int64_t total() const { return tp + fp + fn + tn; }
  ConfusionMatrix& operator+=(const ConfusionMatrix& other) {
    tp += other.tp;
    fp += other.fp;
    fn += other.fn;
    tn += other.tn;
    return *this;
  }

  friend bool operator==(const ConfusionMatrix&,
                         const ConfusionMatrix&) = default;
};

// Standard 2x2 counts; predicted and actual must cover the same non-empty
// post id set (the error names the offending ids).
ConfusionMatrix confusion(const std::map<std::string, bool>& predicted,
                          const std::map<std::string, bool>& actual);

// tp/(tp+fp) and tp/(tp+fn). A zero denominator throws.
double precision(const ConfusionMatrix& m);
double recall(const ConfusionMatrix& m);

struct RocPoint {
  double fpr = 0.0;
  double tpr = 0.0;

  friend bool operator==(const RocPoint&, const RocPoint&) = default;
};

struct RocCurve {
  std::vector<RocPoint> points;  // threshold descending; (0,0) .. (1,1)
  double auc = 0.0;
};

// Threshold sweep over distinct score values (ties grouped into one step),
// trapezoidal AUC. Requires both classes present.
RocCurve roc_auc(const std::map<std::string, double>& scores,
                 const std::map<std::string, bool>& actual);

}  // namespace cascade

#endif  // CASCADE_EVAL_HPP_
