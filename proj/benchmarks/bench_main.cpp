#include <benchmark/benchmark.h>

#include "hubtrack/blur.hpp"
#include "hubtrack/color.hpp"
#include "hubtrack/edges.hpp"
#include "hubtrack/histogram.hpp"
#include "hubtrack/hough.hpp"
#include "hubtrack/synth.hpp"
#include "hubtrack/tracker.hpp"

namespace {

using namespace hubtrack;

SynthSpec wheel_spec(int side) {
  SynthSpec spec;
  spec.width = spec.height = side;
  spec.path = {{side / 2.0, side / 2.0}};
  spec.wheel.outer_radius = side * 0.42;
  spec.wheel.hub_radius = side * 0.066;
  spec.wheel.tread_count = 6;
  spec.noise_sigma = 2.0;
  spec.rng_seed = 1;
  return spec;
}

Image wheel_gray(int side) {
  return to_grayscale(synth_sequence(wheel_spec(side)).frames.front());
}

void BM_GaussianBlur(benchmark::State& state) {
  const Image gray = wheel_gray(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(gaussian_blur(gray, 1.0));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(gray.pixel_count()));
}
BENCHMARK(BM_GaussianBlur)->Arg(256)->Arg(640);

void BM_Sobel(benchmark::State& state) {
  const Image gray = wheel_gray(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(sobel(gray));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(gray.pixel_count()));
}
BENCHMARK(BM_Sobel)->Arg(256)->Arg(640);

void BM_Canny(benchmark::State& state) {
  const GradientField grad = sobel(wheel_gray(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(canny(grad, 50.0));
}
BENCHMARK(BM_Canny)->Arg(256)->Arg(640);

void BM_AccumulateCenters(benchmark::State& state) {
  const GradientField grad = sobel(wheel_gray(256));
  const EdgeMap edges = canny(grad, 50.0);
  HoughParams params;
  params.max_radius = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(accumulate_centers(edges, grad, params));
}
BENCHMARK(BM_AccumulateCenters)->Arg(25)->Arg(0);

void BM_DetectCircles(benchmark::State& state) {
  const Image gray = wheel_gray(static_cast<int>(state.range(0)));
  HoughParams params;
  params.max_radius = 0;
  for (auto _ : state) benchmark::DoNotOptimize(detect_circles(gray, params));
}
BENCHMARK(BM_DetectCircles)->Arg(256)->Arg(640)->Unit(benchmark::kMillisecond);

void BM_BackProject(benchmark::State& state) {
  const Image hsv = rgb_to_hsv(synth_sequence(wheel_spec(256)).frames.front());
  const HueHistogram hist = compute_hue_histogram(hsv, {104, 104, 48, 48});
  for (auto _ : state) benchmark::DoNotOptimize(back_project(hsv, hist));
}
BENCHMARK(BM_BackProject);

void BM_CamShiftStep(benchmark::State& state) {
  const Image hsv = rgb_to_hsv(synth_sequence(wheel_spec(256)).frames.front());
  const ProbabilityMap p = back_project(hsv, compute_hue_histogram(hsv, {104, 104, 48, 48}));
  const Window start{96, 100, 48, 48};
  for (auto _ : state) benchmark::DoNotOptimize(camshift_step(p, start, TrackParams{}));
}
BENCHMARK(BM_CamShiftStep);

}  // namespace
BENCHMARK_MAIN();
