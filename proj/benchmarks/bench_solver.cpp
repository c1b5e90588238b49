#include <benchmark/benchmark.h>

#include <random>

#include "gsp/analysis.hpp"
#include "gsp/estimation.hpp"
#include "gsp/examples.hpp"

namespace {

gsp::estimation::ChoiceDataset random_dataset(std::mt19937& rng, int n) {
  std::vector<gsp::Atom> atoms;
  for (int i = 0; i < 6; ++i) {
    std::vector<int> seq;
    for (int id = 1; id <= n; ++id) seq.push_back(id);
    std::shuffle(seq.begin(), seq.end(), rng);
    atoms.push_back({gsp::ConsumerType{seq, static_cast<int>(rng() % (n + 1))}, 1.0 / 6.0});
  }
  const gsp::GspModel truth(n, std::move(atoms));
  std::vector<gsp::estimation::Observation> observations;
  for (const auto& s : gsp::all_assortments(n)) {
    gsp::estimation::Observation obs;
    obs.assortment = s;
    double sum = 0.0;
    for (int x : s) {
      const double p = gsp::choice_probability(truth, x, s);
      obs.shares.push_back(p);
      sum += p;
    }
    obs.no_choice = std::max(0.0, 1.0 - sum);
    observations.push_back(std::move(obs));
  }
  return gsp::estimation::ChoiceDataset(n, std::move(observations));
}

void BM_FitFullUniverse(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::mt19937 rng(7);
  const auto dataset = random_dataset(rng, n);
  gsp::estimation::FitConfig config;
  config.max_atoms = 24;
  for (auto _ : state) benchmark::DoNotOptimize(gsp::estimation::fit(dataset, config));
}
BENCHMARK(BM_FitFullUniverse)->Arg(3)->Arg(4)->Arg(5);

void BM_GspMembership(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::mt19937 rng(11);
  std::vector<gsp::Atom> atoms;
  for (int i = 0; i < 5; ++i) {
    std::vector<int> seq;
    for (int id = 1; id <= n; ++id) seq.push_back(id);
    std::shuffle(seq.begin(), seq.end(), rng);
    atoms.push_back({gsp::ConsumerType{seq, static_cast<int>(rng() % (n + 1))}, 0.2});
  }
  const gsp::GspModel model(n, std::move(atoms));
  const auto table = gsp::choice_table(model, gsp::all_assortments(n));
  for (auto _ : state) benchmark::DoNotOptimize(gsp::analysis::gsp_membership(table));
}
BENCHMARK(BM_GspMembership)->Arg(3)->Arg(4);

void BM_CounterexampleCertificate(benchmark::State& state) {
  const auto table = *gsp::examples::load_example("counterexample").reference_table;
  for (auto _ : state) benchmark::DoNotOptimize(gsp::analysis::gsp_membership(table));
}
BENCHMARK(BM_CounterexampleCertificate);

}  // namespace

BENCHMARK_MAIN();
