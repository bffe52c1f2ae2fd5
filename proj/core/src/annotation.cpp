#include "cascade/annotation.hpp"

#include <set>
#include <sstream>
#include <stdexcept>

#include "cascade/text.hpp"

namespace cascade {

namespace {

const std::vector<std::string> kHeader = {"post_id", "annotator_id",
                                          "topic_label", "intent_label"};

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

}  // namespace

AgreementTable agreement_table(const std::map<std::string, bool>& labels_a,
                               const std::map<std::string, bool>& labels_b) {
  std::vector<std::string> only_a;
  std::vector<std::string> only_b;
  for (const auto& [id, v] : labels_a) {
    if (!labels_b.contains(id)) only_a.push_back(id);
  }
  for (const auto& [id, v] : labels_b) {
    if (!labels_a.contains(id)) only_b.push_back(id);
  }
  if (!only_a.empty() || !only_b.empty()) {
    std::ostringstream msg;
    msg << "label maps cover different posts";
    append_ids(msg, "annotator A", only_a);
    append_ids(msg, "annotator B", only_b);
    throw std::invalid_argument(msg.str());
  }

  AgreementTable t;
  for (const auto& [id, a] : labels_a) {
    const bool b = labels_b.at(id);
    if (a && b) {
      ++t.both_positive;
    } else if (a && !b) {
      ++t.a_only;
    } else if (!a && b) {
      ++t.b_only;
    } else {
      ++t.both_negative;
    }
  }
  return t;
}

KappaResult cohens_kappa(const AgreementTable& table) {
  const double n = static_cast<double>(table.total());
  if (table.total() <= 0)
    throw std::invalid_argument("kappa undefined for an empty table");

  const double a = static_cast<double>(table.both_positive);
  const double b = static_cast<double>(table.a_only);
  const double c = static_cast<double>(table.b_only);
  const double d = static_cast<double>(table.both_negative);

  KappaResult r;
  r.observed_agreement = (a + d) / n;
  r.expected_agreement = ((a + b) * (a + c) + (c + d) * (b + d)) / (n * n);
  if (r.expected_agreement >= 1.0) {
    throw std::invalid_argument(
        "kappa undefined: expected agreement is 1 (degenerate marginals)");
  }
  r.kappa = (r.observed_agreement - r.expected_agreement) /
            (1.0 - r.expected_agreement);
  return r;
}

std::vector<AnnotationRecord> read_annotations_csv(std::istream& in) {
  CsvReader reader(in);
  auto header = reader.next();
  if (!header || *header != kHeader)
    throw std::runtime_error("annotation csv header mismatch");

  std::vector<AnnotationRecord> out;
  while (auto record = reader.next()) {
    if (record->size() != kHeader.size()) {
      throw std::runtime_error("annotation csv: wrong field count at line " +
                               std::to_string(reader.record_line()));
    }
    AnnotationRecord r;
    r.post_id = (*record)[0];
    r.annotator_id = (*record)[1];
    const std::string& topic = (*record)[2];
    const std::string& intent = (*record)[3];
    if (topic == "topic") {
      r.topic = true;
    } else if (topic == "na") {
      r.topic = false;
    } else {
      throw std::runtime_error("annotation csv: bad topic_label '" + topic +
                               "' at line " +
                               std::to_string(reader.record_line()));
    }
    if (!intent.empty()) {
      if (!r.topic) {
        throw std::runtime_error(
            "annotation csv: intent label on a non-topic post at line " +
            std::to_string(reader.record_line()));
      }
      if (intent == "intent") {
        r.intent = true;
      } else if (intent == "na") {
        r.intent = false;
      } else {
        throw std::runtime_error("annotation csv: bad intent_label '" +
                                 intent + "' at line " +
                                 std::to_string(reader.record_line()));
      }
    }
    out.push_back(std::move(r));
  }
  return out;
}

void write_annotations_csv(const std::vector<AnnotationRecord>& records,
                           std::ostream& out) {
  out << csv_join(kHeader) << '\n';
  for (const auto& r : records) {
    std::string intent;
    if (r.intent) intent = *r.intent ? "intent" : "na";
    out << csv_join({r.post_id, r.annotator_id, r.topic ? "topic" : "na",
                     intent})
        << '\n';
  }
}

AnnotationStudy build_study(const std::vector<AnnotationRecord>& records) {
  std::set<std::string> annotators;
  for (const auto& r : records) annotators.insert(r.annotator_id);
  if (annotators.size() != 2) {
    throw std::invalid_argument("study requires exactly 2 annotators, got " +
                                std::to_string(annotators.size()));
  }
  AnnotationStudy study;
  study.annotator_a = *annotators.begin();
  study.annotator_b = *std::next(annotators.begin());

  std::map<std::string, const AnnotationRecord*> by_a;
  std::map<std::string, const AnnotationRecord*> by_b;
  for (const auto& r : records) {
    auto& side = r.annotator_id == study.annotator_a ? by_a : by_b;
    if (!side.emplace(r.post_id, &r).second) {
      throw std::invalid_argument("duplicate annotation for post " +
                                  r.post_id + " by " + r.annotator_id);
    }
  }

  std::map<std::string, bool> topic_a;
  std::map<std::string, bool> topic_b;
  for (const auto& [id, r] : by_a) topic_a.emplace(id, r->topic);
  for (const auto& [id, r] : by_b) topic_b.emplace(id, r->topic);
  study.topic = agreement_table(topic_a, topic_b);

  // Intent agreement is measured over posts both annotators called topic.
  std::map<std::string, bool> intent_a;
  std::map<std::string, bool> intent_b;
  for (const auto& [id, ra] : by_a) {
    const auto it = by_b.find(id);
    if (it == by_b.end() || !ra->topic || !it->second->topic) continue;
    if (!ra->intent || !it->second->intent) {
      throw std::invalid_argument("post " + id +
                                  " marked topic but missing an intent label");
    }
    intent_a.emplace(id, *ra->intent);
    intent_b.emplace(id, *it->second->intent);
  }
  study.intent = agreement_table(intent_a, intent_b);
  return study;
}

}  // namespace cascade
