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

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace somqe {

/// 8-bit interleaved RGB raster. Value type; immutable by convention once
/// handed to the pipeline.
class RasterImage {
 public:
  static constexpr int kChannels = 3;

  RasterImage() = default;
  RasterImage(int width, int height);
  RasterImage(int width, int height, std::vector<std::uint8_t> data);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  std::size_t pixel_count() const noexcept {
    return static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_);
  }
  bool empty() const noexcept { return pixel_count() == 0; }

  std::uint8_t at(int x, int y, int c) const noexcept {
    return data_[index(x, y) + static_cast<std::size_t>(c)];
  }
  std::uint8_t& at(int x, int y, int c) noexcept {
    return data_[index(x, y) + static_cast<std::size_t>(c)];
  }
  std::array<std::uint8_t, 3> pixel(std::size_t i) const noexcept {
    return {data_[3 * i], data_[3 * i + 1], data_[3 * i + 2]};
  }
  void set_pixel(std::size_t i, std::array<std::uint8_t, 3> rgb) noexcept {
    data_[3 * i] = rgb[0];
    data_[3 * i + 1] = rgb[1];
    data_[3 * i + 2] = rgb[2];
  }

  std::span<const std::uint8_t> data() const noexcept { return data_; }
  std::span<std::uint8_t> data() noexcept { return data_; }

  bool operator==(const RasterImage&) const = default;

 private:
  std::size_t index(int x, int y) const noexcept {
    return 3 * (static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
                static_cast<std::size_t>(x));
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> data_;
};

/// Single real-valued plane, row-major, values nominally in [0,255].
struct Plane {
  int width = 0;
  int height = 0;
  std::vector<double> values;

  Plane() = default;
  Plane(int w, int h, double fill = 0.0)
      : width(w), height(h),
        values(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), fill) {}

  double at(int x, int y) const noexcept {
    return values[static_cast<std::size_t>(y) * static_cast<std::size_t>(width) +
                  static_cast<std::size_t>(x)];
  }
  double& at(int x, int y) noexcept {
    return values[static_cast<std::size_t>(y) * static_cast<std::size_t>(width) +
                  static_cast<std::size_t>(x)];
  }
  bool operator==(const Plane&) const = default;
};

/// Round half up and clamp to [0,255].
std::uint8_t to_byte(double v) noexcept;

Plane channel_plane(const RasterImage& image, int channel);

/// 0.299 R + 0.587 G + 0.114 B
Plane luminance(const RasterImage& image);

RasterImage from_planes(const Plane& r, const Plane& g, const Plane& b);

}  // namespace somqe
