#include <benchmark/benchmark.h>

#include <string>

#include "cascade/corpus.hpp"
#include "cascade/features.hpp"
#include "cascade/rng.hpp"
#include "cascade/text.hpp"

namespace {

using namespace cascade;

const Lexicons& lexicons() {
  static const Lexicons lex =
      Lexicons::load(std::string(CASCADE_BENCH_DATA_DIR) + "/lexicons");
  return lex;
}

const LanguageDetector& detector() {
  static const LanguageDetector det =
      LanguageDetector::load(std::string(CASCADE_BENCH_DATA_DIR) + "/lang");
  return det;
}

std::string sample_text(std::size_t words) {
  static const std::vector<std::string> vocab = {
      "the",     "furious", "crowd",   "racism",  "refugee", "reading",
      "stadium", "about",   "certainly", "perhaps", "story", "evening",
      "new",     "york",    "times",   "worship", "riot",    "beautiful"};
  Rng rng(7);
  std::string out;
  for (std::size_t i = 0; i < words; ++i) {
    out += vocab[rng.bounded(vocab.size())];
    out += rng.bounded(12) == 0 ? "! " : " ";
  }
  return out;
}

void BM_NormalizeText(benchmark::State& state) {
  const std::string text =
      sample_text(static_cast<std::size_t>(state.range(0))) +
      " extra\xF0\x9F\x98\x80 spac es\t#tags";
  for (auto _ : state) {
    benchmark::DoNotOptimize(normalize_text(text));
  }
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations()) *
                          static_cast<std::int64_t>(text.size()));
}
BENCHMARK(BM_NormalizeText)->Arg(30)->Arg(300);

void BM_SemanticTag(benchmark::State& state) {
  const std::string text = sample_text(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(semantic_tag(text, lexicons()));
  }
}
BENCHMARK(BM_SemanticTag)->Arg(30)->Arg(300);

void BM_DetectLanguage(benchmark::State& state) {
  const std::string text = sample_text(40);
  for (auto _ : state) {
    benchmark::DoNotOptimize(detector().detect(text));
  }
}
BENCHMARK(BM_DetectLanguage);

void BM_ExtractFeatures(benchmark::State& state) {
  Post post;
  post.post_id = "bench";
  post.description = sample_text(60);
  for (auto _ : state) {
    benchmark::DoNotOptimize(extract_features(post, lexicons()));
  }
}
BENCHMARK(BM_ExtractFeatures);

}  // namespace
