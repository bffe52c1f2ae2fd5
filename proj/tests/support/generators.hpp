#ifndef CASCADE_TESTS_SUPPORT_GENERATORS_HPP_
#define CASCADE_TESTS_SUPPORT_GENERATORS_HPP_

#include <string>
#include <vector>

#include "cascade/classify.hpp"
#include "cascade/features.hpp"
#include "cascade/rng.hpp"

namespace cascade::test {

inline Level random_level(Rng& rng) {
  return static_cast<Level>(rng.bounded(5));
}

inline FeatureVector random_vector(Rng& rng, int f2_categories = 4) {
  FeatureVector v;
  v.f1 = static_cast<Polarity>(rng.bounded(5));
  for (auto& l : v.f3) l = random_level(rng);
  for (auto& l : v.f4) l = random_level(rng);
  for (auto& l : v.f5) l = random_level(rng);
  const std::vector<std::string> cats = {"S1.1", "E3", "Z99", "K2", "M1",
                                         "G3",   "A7", "X2.4"};
  const std::size_t k = rng.bounded(static_cast<std::uint64_t>(f2_categories) + 1);
  for (std::size_t i = 0; i < k; ++i) {
    v.f2[cats[rng.bounded(cats.size())]] += static_cast<int>(1 + rng.bounded(4));
  }
  return v;
}

// Vectors whose class signal lives only in the given F3 level pattern; every
// other component is uniform noise.
inline FeatureVector f3_signal_vector(Rng& rng, bool positive) {
  FeatureVector v = random_vector(rng, 3);
  if (positive) {
    v.f3 = {Level::very_high, Level::high, Level::very_low, Level::very_high,
            Level::very_low};
  } else {
    v.f3 = {Level::very_low, Level::very_low, Level::high, Level::very_low,
            Level::medium};
  }
  return v;
}

// Fully deterministic per class: every component and the semantic bag take
// disjoint values, so one-class training separates the classes exactly.
inline FeatureVector disjoint_class_vector(Rng&, bool positive) {
  FeatureVector v;
  if (positive) {
    v.f1 = Polarity::strongly_negative;
    v.f3 = {Level::very_high, Level::high, Level::very_low, Level::very_high,
            Level::very_low};
    v.f4 = {Level::low, Level::very_high, Level::very_low};
    v.f5 = {Level::low, Level::low, Level::medium, Level::very_low,
            Level::very_high};
    v.f2 = {{"E3", 3}, {"G3", 2}};
  } else {
    v.f1 = Polarity::positive;
    v.f3 = {Level::very_low, Level::very_low, Level::high, Level::very_low,
            Level::medium};
    v.f4 = {Level::very_high, Level::very_low, Level::high};
    v.f5 = {Level::high, Level::medium, Level::very_low, Level::high,
            Level::very_low};
    v.f2 = {{"E4.1", 3}, {"K2", 2}};
  }
  return v;
}

inline std::vector<LabeledVector> labeled_set(
    Rng& rng, std::size_t positives, std::size_t negatives,
    FeatureVector (*make)(Rng&, bool)) {
  std::vector<LabeledVector> out;
  for (std::size_t i = 0; i < positives; ++i) {
    out.push_back({"pos" + std::to_string(i), make(rng, true), true});
  }
  for (std::size_t i = 0; i < negatives; ++i) {
    out.push_back({"neg" + std::to_string(i), make(rng, false), false});
  }
  return out;
}

}  // namespace cascade::test

#endif  // CASCADE_TESTS_SUPPORT_GENERATORS_HPP_
