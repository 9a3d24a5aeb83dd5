/* Copyright 2026 The somqe Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 *
 */

// Serial reference vs OpenMP kernels. Arg: image side length in pixels.

#include <benchmark/benchmark.h>

#include <cmath>
#include <random>
#include <vector>

#include "somqe/kernels.hpp"
#include "somqe/pixel.hpp"
#include "somqe/raster.hpp"

namespace {

using namespace somqe;

std::vector<PixelVector> random_pixels(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<PixelVector> out(n);
  for (auto& p : out) p.c = {u(rng), u(rng), u(rng)};
  return out;
}

Plane random_plane(int side, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 255.0);
  Plane p(side, side);
  for (auto& v : p.values) v = u(rng);
  return p;
}

template <auto Kernel>
void bm_bmu_scan(benchmark::State& state) {
  const auto side = static_cast<std::size_t>(state.range(0));
  const auto pixels = random_pixels(side * side, 1);
  const auto models = random_pixels(16, 2);
  std::vector<double> distance(pixels.size());
  std::vector<std::int32_t> index(pixels.size());
  for (auto _ : state) {
    Kernel(pixels, models, distance, index);
    benchmark::DoNotOptimize(distance.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(pixels.size()));
}

template <auto Kernel>
void bm_warp_bilinear(benchmark::State& state) {
  const int side = static_cast<int>(state.range(0));
  const auto src = random_plane(side, 3);
  Plane dst(side, side);
  const double c = std::cos(0.02), s = std::sin(0.02);
  const kernels::AffineMap map{c, -s, s, c, 3.5, -2.25};
  for (auto _ : state) {
    Kernel(src, map, dst);
    benchmark::DoNotOptimize(dst.values.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(dst.values.size()));
}

template <auto Kernel>
void bm_box_downsample(benchmark::State& state) {
  const int side = static_cast<int>(state.range(0));
  const auto src = random_plane(side, 4);
  Plane dst(side / 2, side / 2);
  for (auto _ : state) {
    Kernel(src, dst);
    benchmark::DoNotOptimize(dst.values.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(src.values.size()));
}

template <auto Kernel>
void bm_stretch_channel(benchmark::State& state) {
  const auto side = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(5);
  std::vector<std::uint8_t> src(side * side * 3), dst(src.size());
  for (auto& v : src) v = static_cast<std::uint8_t>(50 + rng() % 101);
  for (auto _ : state) {
    for (int channel = 0; channel < 3; ++channel) Kernel(src, dst, channel, 50, 150);
    benchmark::DoNotOptimize(dst.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(src.size()));
}

constexpr std::int64_t kMin = 256, kMax = 2048;

BENCHMARK(bm_bmu_scan<kernels::serial::bmu_scan>)->Name("bmu_scan/serial")->RangeMultiplier(2)->Range(kMin, kMax);
BENCHMARK(bm_bmu_scan<kernels::omp::bmu_scan>)->Name("bmu_scan/omp")->RangeMultiplier(2)->Range(kMin, kMax)->UseRealTime();
BENCHMARK(bm_warp_bilinear<kernels::serial::warp_bilinear>)->Name("warp_bilinear/serial")->RangeMultiplier(2)->Range(kMin, kMax);
BENCHMARK(bm_warp_bilinear<kernels::omp::warp_bilinear>)->Name("warp_bilinear/omp")->RangeMultiplier(2)->Range(kMin, kMax)->UseRealTime();
BENCHMARK(bm_box_downsample<kernels::serial::box_downsample>)->Name("box_downsample/serial")->RangeMultiplier(2)->Range(kMin, kMax);
BENCHMARK(bm_box_downsample<kernels::omp::box_downsample>)->Name("box_downsample/omp")->RangeMultiplier(2)->Range(kMin, kMax)->UseRealTime();
BENCHMARK(bm_stretch_channel<kernels::serial::stretch_channel>)->Name("stretch_channel/serial")->RangeMultiplier(2)->Range(kMin, kMax);
BENCHMARK(bm_stretch_channel<kernels::omp::stretch_channel>)->Name("stretch_channel/omp")->RangeMultiplier(2)->Range(kMin, kMax)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
