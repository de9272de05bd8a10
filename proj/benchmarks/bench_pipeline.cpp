#include <benchmark/benchmark.h>

#include <random>

#include "barkline/edge_detect.hpp"
#include "barkline/pipeline.hpp"
#include "barkline/robust_fit.hpp"
#include "barkline/synth.hpp"

using namespace barkline;

namespace {

// Frame side is width; height is two thirds of it, as on the production camera.
SyntheticPanel panel_for(int width) {
  SpecRanges r;
  r.frame = {width, width * 2 / 3};
  r.width_px = {width * 0.2, width * 0.2};
  r.length_px = {width * 0.8, width * 0.8};
  r.outlier_fraction = {0.1, 0.1};
  r.outlier_magnitude_px = {30, 30};
  r.center_jitter_px = 0;
  return generate(sample_spec(r, 17), r.frame);
}

void BM_Convolve3x3(benchmark::State& state) {
  const auto gray = mask_to_gray(panel_for(static_cast<int>(state.range(0))).mask);
  for (auto _ : state) benchmark::DoNotOptimize(convolve3x3(gray, PrewittKernels::light_to_dark));
  state.SetItemsProcessed(state.iterations() * gray.width() * gray.height());
}
BENCHMARK(BM_Convolve3x3)->Arg(512)->Arg(3072)->Unit(benchmark::kMillisecond);

void BM_ExtractBoundaryPoints(benchmark::State& state) {
  const auto mask = panel_for(static_cast<int>(state.range(0))).mask;
  const EdgeDetectParams params;
  for (auto _ : state) benchmark::DoNotOptimize(extract_boundary_points(mask, params));
}
BENCHMARK(BM_ExtractBoundaryPoints)->Arg(512)->Arg(3072)->Unit(benchmark::kMillisecond);

void BM_FitLine(benchmark::State& state) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> noise(0.0, 1.0);
  std::bernoulli_distribution outlier(0.15);
  std::vector<Point2d> pts;
  for (int x = 0; x < state.range(0); ++x) {
    pts.push_back({x + 0.5, 0.02 * x + 300 + noise(rng) + (outlier(rng) ? 45.0 : 0.0)});
  }
  const TukeyParams params;
  for (auto _ : state) benchmark::DoNotOptimize(fit_line(pts, params));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_FitLine)->Arg(500)->Arg(3000)->Unit(benchmark::kMicrosecond);

void BM_Pipeline(benchmark::State& state) {
  const auto mask = panel_for(static_cast<int>(state.range(0))).mask;
  const PipelineConfig config;
  for (auto _ : state) benchmark::DoNotOptimize(run_pipeline(mask, config));
}
BENCHMARK(BM_Pipeline)->Arg(1024)->Arg(3072)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
