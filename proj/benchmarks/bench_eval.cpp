#include <benchmark/benchmark.h>

#include <algorithm>
#include <random>

#include "gsp/examples.hpp"
#include "gsp/types.hpp"

namespace {

const gsp::GspModel& camera_model() {
  static const gsp::GspModel model = *gsp::examples::load_example("cameras").reference_model;
  return model;
}

void BM_ChoiceProbability(benchmark::State& state) {
  const auto& model = camera_model();
  const gsp::Assortment offered({1, 2, 3});
  for (auto _ : state) benchmark::DoNotOptimize(gsp::choice_probability(model, 2, offered));
}
BENCHMARK(BM_ChoiceProbability);

void BM_ChoiceTableAllSubsets(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::mt19937 rng(42);
  std::vector<gsp::Atom> atoms;
  for (int i = 0; i < 8; ++i) {
    std::vector<int> seq;
    for (int id = 1; id <= n; ++id) seq.push_back(id);
    std::shuffle(seq.begin(), seq.end(), rng);
    atoms.push_back({gsp::ConsumerType{seq, static_cast<int>(rng() % (n + 1))}, 0.125});
  }
  const gsp::GspModel model(n, std::move(atoms));
  const auto assortments = gsp::all_assortments(n);
  for (auto _ : state) benchmark::DoNotOptimize(gsp::choice_table(model, assortments));
}
BENCHMARK(BM_ChoiceTableAllSubsets)->Arg(4)->Arg(6)->Arg(8);

void BM_EnumerateTypes(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(gsp::enumerate_types(n));
}
BENCHMARK(BM_EnumerateTypes)->Arg(4)->Arg(5)->Arg(6);

}  // namespace

BENCHMARK_MAIN();
