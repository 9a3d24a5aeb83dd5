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

// Per-element bodies shared by the serial and OpenMP kernels.

#include <cmath>
#include <cstdint>
#include <span>

#include "somqe/kernels.hpp"

namespace somqe::kernels::detail {

inline void bmu_one(const PixelVector& x, std::span<const PixelVector> models, double& distance,
                    std::int32_t& index) noexcept {
  double best = squared_distance(x, models[0]);
  std::int32_t best_index = 0;
  for (std::size_t m = 1; m < models.size(); ++m) {
    const double d = squared_distance(x, models[m]);
    if (d < best) {
      best = d;
      best_index = static_cast<std::int32_t>(m);
    }
  }
  distance = std::sqrt(best);
  index = best_index;
}

inline void warp_row(const Plane& src, const AffineMap& map, Plane& dst, int y) noexcept {
  for (int x = 0; x < dst.width; ++x) {
    const double sx = map.a00 * x + map.a01 * y + map.bx;
    const double sy = map.a10 * x + map.a11 * y + map.by;
    dst.at(x, y) = sample_bilinear(src, sx, sy);
  }
}

inline void downsample_row(const Plane& src, Plane& dst, int y) noexcept {
  for (int x = 0; x < dst.width; ++x) {
    double sum = 0.0;
    int count = 0;
    for (int dy = 0; dy < 2; ++dy) {
      const int sy = 2 * y + dy;
      if (sy >= src.height) continue;
      for (int dx = 0; dx < 2; ++dx) {
        const int sx = 2 * x + dx;
        if (sx >= src.width) continue;
        sum += src.at(sx, sy);
        ++count;
      }
    }
    dst.at(x, y) = sum / count;
  }
}

inline std::uint8_t stretch_value(std::uint8_t v, std::uint8_t lo, std::uint8_t hi) noexcept {
  if (hi == lo) return 0;
  const double scaled = (static_cast<double>(v) - lo) * 255.0 / (static_cast<double>(hi) - lo);
  return to_byte(scaled);
}

}  // namespace somqe::kernels::detail
