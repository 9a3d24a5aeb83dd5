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

#include <vector>

#include "somqe/raster.hpp"

namespace somqe {

/// Level 0 is full resolution; every further level halves both dimensions
/// (floor) by 2x2 box averaging. Levels are added while the next level's
/// smaller dimension stays >= kMinPyramidDimension.
template <typename Level>
struct Pyramid {
  std::vector<Level> levels;

  const Level& finest() const { return levels.front(); }
  const Level& coarsest() const { return levels.back(); }
  std::size_t size() const noexcept { return levels.size(); }
};

inline constexpr int kMinPyramidDimension = 32;

int pyramid_level_count(int width, int height) noexcept;

Plane downsample(const Plane& plane);
Pyramid<Plane> build_pyramid(const Plane& plane);

/// 8-bit pyramid: each level is the rounded box average of the level above.
Pyramid<RasterImage> build_pyramid(const RasterImage& image);

}  // namespace somqe
