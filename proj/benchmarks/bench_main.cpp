#include <benchmark/benchmark.h>

#include <random>

#include "maup/kmeans.hpp"
#include "maup/phantom.hpp"
#include "maup/pipeline.hpp"
#include "maup/regions.hpp"

namespace {

const maup::Phantom& phantom() {
  static const maup::Phantom ph = maup::generate_phantom(maup::phantom_preset(maup::ShapeFamily::two_lobe, 1));
  return ph;
}

void BM_SimilarityStack(benchmark::State& state) {
  const auto& ph = phantom();
  const auto part = maup::rpg_partition(ph.support.mask, static_cast<int>(state.range(0)), 1);
  const auto protos = maup::regional_prototypes(ph.support.features, part);
  for (auto _ : state) {
    auto stack = maup::similarity_stack(ph.query.features, protos);
    benchmark::DoNotOptimize(stack.maps.data());
  }
}
BENCHMARK(BM_SimilarityStack)->Arg(1)->Arg(30)->Arg(60);

void BM_Dilate(benchmark::State& state) {
  const auto& mask = phantom().support.mask;
  const auto se = maup::StructuringElement::disk(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    auto out = maup::dilate(mask, se);
    benchmark::DoNotOptimize(out);
  }
}
BENCHMARK(BM_Dilate)->Arg(1)->Arg(5)->Arg(10);

void BM_KMeans(benchmark::State& state) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> u(0, 47);
  std::vector<maup::PointRC> pts(static_cast<std::size_t>(state.range(0)));
  for (auto& p : pts) p = {u(rng), u(rng)};
  for (auto _ : state) benchmark::DoNotOptimize(maup::kmeans(pts, 10, 7));
}
BENCHMARK(BM_KMeans)->Arg(50)->Arg(115)->Arg(500);

void BM_Episode(benchmark::State& state) {
  const auto& ph = phantom();
  const maup::EpisodeInputs in{ph.support.features, ph.support.mask, ph.query.features};
  maup::PromptConfig cfg;
  cfg.n_f = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto r = maup::run_episode(in, cfg);
    benchmark::DoNotOptimize(r.exported.positives.data());
  }
}
BENCHMARK(BM_Episode)->Arg(5)->Arg(30)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
