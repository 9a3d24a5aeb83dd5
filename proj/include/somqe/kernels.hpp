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

#pragma once

#include <cstdint>
#include <span>

#include "somqe/pixel.hpp"
#include "somqe/raster.hpp"

/// Data-parallel inner loops. Each kernel has a serial reference in
/// kernels::serial and an OpenMP version in kernels::omp with identical
/// per-element arithmetic, so the two agree bitwise. Library code calls the
/// OpenMP versions; tests and the benchmark compare them.
namespace somqe::kernels {

/// src = linear * (x, y) + offset, evaluated per output pixel.
struct AffineMap {
  double a00 = 1.0, a01 = 0.0, a10 = 0.0, a11 = 1.0;
  double bx = 0.0, by = 0.0;
};

/// Clamp-to-edge bilinear sample.
inline double sample_bilinear(const Plane& src, double sx, double sy) noexcept {
  const double max_x = src.width - 1;
  const double max_y = src.height - 1;
  sx = sx < 0.0 ? 0.0 : (sx > max_x ? max_x : sx);
  sy = sy < 0.0 ? 0.0 : (sy > max_y ? max_y : sy);
  const int x0 = static_cast<int>(sx);
  const int y0 = static_cast<int>(sy);
  const int x1 = x0 + 1 < src.width ? x0 + 1 : x0;
  const int y1 = y0 + 1 < src.height ? y0 + 1 : y0;
  const double fx = sx - x0;
  const double fy = sy - y0;
  const double top = src.at(x0, y0) * (1.0 - fx) + src.at(x1, y0) * fx;
  const double bottom = src.at(x0, y1) * (1.0 - fx) + src.at(x1, y1) * fx;
  return top * (1.0 - fy) + bottom * fy;
}

namespace serial {

/// For every pixel: row-major index of the nearest model (lowest index on
/// ties) and the Euclidean distance to it.
void bmu_scan(std::span<const PixelVector> pixels, std::span<const PixelVector> models,
              std::span<double> distance, std::span<std::int32_t> index);

void warp_bilinear(const Plane& src, const AffineMap& map, Plane& dst);

/// dst must be floor(src/2) in each dimension; each output is the mean of its
/// 2x2 source block (available pixels only).
void box_downsample(const Plane& src, Plane& dst);

/// Maps one interleaved channel through (v - lo) * 255 / (hi - lo), rounded
/// half up; a constant channel (hi == lo) maps to 0.
void stretch_channel(std::span<const std::uint8_t> src, std::span<std::uint8_t> dst,
                     int channel, std::uint8_t lo, std::uint8_t hi);

}  // namespace serial

namespace omp {

void bmu_scan(std::span<const PixelVector> pixels, std::span<const PixelVector> models,
              std::span<double> distance, std::span<std::int32_t> index);
void warp_bilinear(const Plane& src, const AffineMap& map, Plane& dst);
void box_downsample(const Plane& src, Plane& dst);
void stretch_channel(std::span<const std::uint8_t> src, std::span<std::uint8_t> dst,
                     int channel, std::uint8_t lo, std::uint8_t hi);

}  // namespace omp

}  // namespace somqe::kernels
