#ifndef CASCADE_ANNOTATION_HPP_
#define CASCADE_ANNOTATION_HPP_

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace cascade {

// One annotator's verdict on one post. The intent label exists only for
// posts the annotator marked as on-topic (two-phase protocol).
struct AnnotationRecord {
  std::string post_id;
  std::string annotator_id;
  bool topic = false;
  std::optional<bool> intent;

  friend bool operator==(const AnnotationRecord&,
                         const AnnotationRecord&) = default;
};

struct AgreementTable {
  std::int64_t both_positive = 0;
  std::int64_t a_only = 0;
  std::int64_t b_only = 0;
  std::int64_t both_negative = 0;

  std::int64_t total() const {
    return both_positive + a_only + b_only + both_negative;
  }
  AgreementTable transposed() const {
    return {both_positive, b_only, a_only, both_negative};
  }

  friend bool operator==(const AgreementTable&,
                         const AgreementTable&) = default;
};

struct KappaResult {
  double observed_agreement = 0.0;
  double expected_agreement = 0.0;
  double kappa = 0.0;
};

// 2x2 agreement counts over the shared post set. Throws if the two label
// maps cover different post ids (the message names the offenders).
AgreementTable agreement_table(const std::map<std::string, bool>& labels_a,
                               const std::map<std::string, bool>& labels_b);

// Standard two-category Cohen's kappa. Throws on an empty table or when
// expected agreement is 1 (kappa undefined).
KappaResult cohens_kappa(const AgreementTable& table);

// CSV columns: post_id, annotator_id, topic_label, intent_label.
// topic_label is "topic" or "na"; intent_label is "intent", "na", or empty
// (empty required when topic_label is "na").
std::vector<AnnotationRecord> read_annotations_csv(std::istream& in);
void write_annotations_csv(const std::vector<AnnotationRecord>& records,
                           std::ostream& out);

// Pairwise study over exactly two annotators: topic agreement over all
// shared posts, intent agreement over the posts both marked topic.
struct AnnotationStudy {
  std::string annotator_a;
  std::string annotator_b;
  AgreementTable topic;
  AgreementTable intent;
};

AnnotationStudy build_study(const std::vector<AnnotationRecord>& records);

}  // namespace cascade

#endif  // CASCADE_ANNOTATION_HPP_
