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

#include "somqe/normalize.hpp"

#include <algorithm>

#include "somqe/kernels.hpp"

namespace somqe {
namespace {

template <typename Stretch>
RasterImage normalize_with(const RasterImage& image, Stretch stretch) {
  RasterImage out(image.width(), image.height());
  const auto src = image.data();
  for (int c = 0; c < RasterImage::kChannels; ++c) {
    std::uint8_t lo = 255;
    std::uint8_t hi = 0;
    for (std::size_t i = static_cast<std::size_t>(c); i < src.size(); i += 3) {
      lo = std::min(lo, src[i]);
      hi = std::max(hi, src[i]);
    }
    stretch(src, out.data(), c, lo, hi);
  }
  return out;
}

}  // namespace

RasterImage normalize_contrast(const RasterImage& image) {
  return normalize_with(image, kernels::omp::stretch_channel);
}

RasterImage normalize_contrast_serial(const RasterImage& image) {
  return normalize_with(image, kernels::serial::stretch_channel);
}

}  // namespace somqe
