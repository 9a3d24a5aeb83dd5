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

#include "kernel_ops.hpp"

namespace somqe::kernels::omp {

void bmu_scan(std::span<const PixelVector> pixels, std::span<const PixelVector> models,
              std::span<double> distance, std::span<std::int32_t> index) {
  const auto n = static_cast<std::int64_t>(pixels.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) {
    detail::bmu_one(pixels[i], models, distance[i], index[i]);
  }
}

void warp_bilinear(const Plane& src, const AffineMap& map, Plane& dst) {
#pragma omp parallel for schedule(static)
  for (int y = 0; y < dst.height; ++y) detail::warp_row(src, map, dst, y);
}

void box_downsample(const Plane& src, Plane& dst) {
#pragma omp parallel for schedule(static)
  for (int y = 0; y < dst.height; ++y) detail::downsample_row(src, dst, y);
}

void stretch_channel(std::span<const std::uint8_t> src, std::span<std::uint8_t> dst,
                     int channel, std::uint8_t lo, std::uint8_t hi) {
  const auto pixels = static_cast<std::int64_t>(src.size() / 3);
#pragma omp parallel for schedule(static)
  for (std::int64_t p = 0; p < pixels; ++p) {
    const std::size_t i = 3 * static_cast<std::size_t>(p) + static_cast<std::size_t>(channel);
    dst[i] = detail::stretch_value(src[i], lo, hi);
  }
}

}  // namespace somqe::kernels::omp
