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

#include "somqe/raster.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "somqe/error.hpp"

namespace somqe {

RasterImage::RasterImage(int width, int height)
    : RasterImage(width, height,
                  std::vector<std::uint8_t>(3 * static_cast<std::size_t>(std::max(width, 0)) *
                                            static_cast<std::size_t>(std::max(height, 0)))) {}

RasterImage::RasterImage(int width, int height, std::vector<std::uint8_t> data)
    : width_(width), height_(height), data_(std::move(data)) {
  if (width < 0 || height < 0) {
    throw Error(ErrorCode::InvalidArgument, "negative image dimensions");
  }
  if (data_.size() != 3 * pixel_count()) {
    throw Error(ErrorCode::InvalidArgument,
                "pixel buffer holds " + std::to_string(data_.size()) + " bytes, expected " +
                    std::to_string(3 * pixel_count()));
  }
}

std::uint8_t to_byte(double v) noexcept {
  if (!(v > 0.0)) return 0;
  if (v >= 255.0) return 255;
  return static_cast<std::uint8_t>(std::floor(v + 0.5));
}

Plane channel_plane(const RasterImage& image, int channel) {
  Plane out(image.width(), image.height());
  const auto data = image.data();
  for (std::size_t i = 0; i < image.pixel_count(); ++i) {
    out.values[i] = data[3 * i + static_cast<std::size_t>(channel)];
  }
  return out;
}

Plane luminance(const RasterImage& image) {
  Plane out(image.width(), image.height());
  const auto data = image.data();
  for (std::size_t i = 0; i < image.pixel_count(); ++i) {
    out.values[i] = 0.299 * data[3 * i] + 0.587 * data[3 * i + 1] + 0.114 * data[3 * i + 2];
  }
  return out;
}

RasterImage from_planes(const Plane& r, const Plane& g, const Plane& b) {
  if (r.width != g.width || r.width != b.width || r.height != g.height ||
      r.height != b.height) {
    throw Error(ErrorCode::DimensionMismatch, "channel planes differ in size");
  }
  RasterImage out(r.width, r.height);
  auto data = out.data();
  for (std::size_t i = 0; i < r.values.size(); ++i) {
    data[3 * i] = to_byte(r.values[i]);
    data[3 * i + 1] = to_byte(g.values[i]);
    data[3 * i + 2] = to_byte(b.values[i]);
  }
  return out;
}

}  // namespace somqe
