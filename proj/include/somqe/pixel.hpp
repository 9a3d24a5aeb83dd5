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
#include <cmath>
#include <cstdint>

namespace somqe {

/// RGB sample scaled to [0,1] by dividing each 8-bit channel by 255.
struct PixelVector {
  std::array<double, 3> c{0.0, 0.0, 0.0};

  static PixelVector from_rgb8(std::uint8_t r, std::uint8_t g, std::uint8_t b) noexcept {
    return {{r / 255.0, g / 255.0, b / 255.0}};
  }

  bool in_unit_cube() const noexcept {
    for (double v : c) {
      if (!(v >= 0.0 && v <= 1.0)) return false;
    }
    return true;
  }

  bool operator==(const PixelVector&) const = default;
};

// Every kernel uses these two so serial and parallel paths agree bitwise.
inline double squared_distance(const PixelVector& a, const PixelVector& b) noexcept {
  const double d0 = a.c[0] - b.c[0];
  const double d1 = a.c[1] - b.c[1];
  const double d2 = a.c[2] - b.c[2];
  return d0 * d0 + d1 * d1 + d2 * d2;
}

inline double distance(const PixelVector& a, const PixelVector& b) noexcept {
  return std::sqrt(squared_distance(a, b));
}

}  // namespace somqe
