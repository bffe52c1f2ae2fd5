#include <benchmark/benchmark.h>

#include "cascade/classify.hpp"
#include "cascade/corpus.hpp"
#include "cascade/eval.hpp"
#include "cascade/fixture.hpp"
#include "cascade/rng.hpp"

namespace {

using namespace cascade;

FeatureVector synth_vector(Rng& rng) {
  FeatureVector v;
  v.f1 = static_cast<Polarity>(rng.bounded(5));
  for (auto& l : v.f3) l = static_cast<Level>(rng.bounded(5));
  for (auto& l : v.f4) l = static_cast<Level>(rng.bounded(5));
  for (auto& l : v.f5) l = static_cast<Level>(rng.bounded(5));
  v.f2 = {{"E3", static_cast<int>(1 + rng.bounded(4))},
          {"Z99", static_cast<int>(1 + rng.bounded(6))}};
  return v;
}

std::vector<FeatureVector> training_set(std::size_t n) {
  Rng rng(11);
  std::vector<FeatureVector> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(synth_vector(rng));
  return out;
}

void BM_TrainNb(benchmark::State& state) {
  const auto vectors = training_set(static_cast<std::size_t>(state.range(0)));
  TrainConfig config;
  for (auto _ : state) {
    benchmark::DoNotOptimize(train(Algorithm::nb, vectors, config));
  }
}
BENCHMARK(BM_TrainNb)->Arg(100)->Arg(1000);

void BM_TrainRf(benchmark::State& state) {
  const auto vectors = training_set(static_cast<std::size_t>(state.range(0)));
  TrainConfig config;
  for (auto _ : state) {
    benchmark::DoNotOptimize(train(Algorithm::rf, vectors, config));
  }
}
BENCHMARK(BM_TrainRf)->Arg(100);

void BM_ScoreNb(benchmark::State& state) {
  const auto vectors = training_set(200);
  TrainConfig config;
  const auto model = train(Algorithm::nb, vectors, config);
  Rng rng(13);
  const auto probe = synth_vector(rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(score(model, probe));
  }
}
BENCHMARK(BM_ScoreNb);

void BM_ScoreRf(benchmark::State& state) {
  const auto vectors = training_set(200);
  TrainConfig config;
  const auto model = train(Algorithm::rf, vectors, config);
  Rng rng(13);
  const auto probe = synth_vector(rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(score(model, probe));
  }
}
BENCHMARK(BM_ScoreRf);

void BM_RocAuc(benchmark::State& state) {
  Rng rng(17);
  std::map<std::string, double> scores;
  std::map<std::string, bool> actual;
  for (int i = 0; i < state.range(0); ++i) {
    const std::string id = "p" + std::to_string(i);
    actual.emplace(id, rng.bounded(2) == 0);
    scores.emplace(id, rng.unit());
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(roc_auc(scores, actual));
  }
}
BENCHMARK(BM_RocAuc)->Arg(10000);

void BM_Deduplicate(benchmark::State& state) {
  const auto fixture = make_stats_fixture(42);
  for (auto _ : state) {
    benchmark::DoNotOptimize(deduplicate(fixture.dataset));
  }
}
BENCHMARK(BM_Deduplicate);

}  // namespace
