#include <vector>

#include <benchmark/benchmark.h>

#include "nsbox/decompose.hpp"
#include "nsbox/measures.hpp"
#include "nsbox/quantum.hpp"
#include "nsbox/sampling.hpp"

using namespace nsbox;

namespace {

std::vector<Box> sample_boxes(std::size_t n, SampleMode mode) {
  Rng rng(5);
  std::vector<Box> out;
  for (std::size_t k = 0; k < n; ++k) out.push_back(sample_ns_box(rng, mode));
  return out;
}

void BM_BornBox(benchmark::State& state) {
  const auto rho = werner_state(0.8);
  const auto settings = preset_settings("tsirelson");
  for (auto _ : state) benchmark::DoNotOptimize(born_box(rho, settings));
}
BENCHMARK(BM_BornBox);

void BM_BornBoxBloch(benchmark::State& state) {
  const auto rho = werner_state(0.8);
  const auto settings = preset_settings("tsirelson");
  for (auto _ : state) benchmark::DoNotOptimize(born_box_bloch(rho, settings));
}
BENCHMARK(BM_BornBoxBloch);

void BM_Discords(benchmark::State& state) {
  const auto boxes = sample_boxes(256, SampleMode::NoisyExtremal);
  std::size_t k = 0;
  for (auto _ : state) {
    const Box& b = boxes[k++ % boxes.size()];
    benchmark::DoNotOptimize(bell_discord(b).value + mermin_discord(b).value);
  }
}
BENCHMARK(BM_Discords);

void BM_VertexWeights(benchmark::State& state) {
  const auto boxes = sample_boxes(256, SampleMode::VertexDirichlet);
  std::size_t k = 0;
  for (auto _ : state) benchmark::DoNotOptimize(vertex_weights(boxes[k++ % boxes.size()]));
}
BENCHMARK(BM_VertexWeights);

void BM_Canonical2(benchmark::State& state) {
  const auto boxes = sample_boxes(256, SampleMode::NoisyExtremal);
  std::size_t k = 0;
  for (auto _ : state) benchmark::DoNotOptimize(canonical2(boxes[k++ % boxes.size()]));
}
BENCHMARK(BM_Canonical2);

void BM_Canonical3(benchmark::State& state) {
  const auto boxes = sample_boxes(256, SampleMode::NoisyExtremal);
  std::size_t k = 0;
  for (auto _ : state) benchmark::DoNotOptimize(canonical3(boxes[k++ % boxes.size()]));
}
BENCHMARK(BM_Canonical3);

void BM_Membership(benchmark::State& state) {
  const auto boxes = sample_boxes(256, SampleMode::VertexDirichlet);
  const auto region = static_cast<Region>(state.range(0));
  std::size_t k = 0;
  for (auto _ : state) benchmark::DoNotOptimize(membership(boxes[k++ % boxes.size()], region));
  state.SetLabel(std::string(to_string(region)));
}
BENCHMARK(BM_Membership)->DenseRange(static_cast<int>(Region::NS), static_cast<int>(Region::G0Q0));

}  // namespace

BENCHMARK_MAIN();
