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

#include "somqe/pyramid.hpp"

#include <algorithm>

#include "somqe/kernels.hpp"

namespace somqe {

int pyramid_level_count(int width, int height) noexcept {
  int levels = 1;
  while (std::min(width, height) / 2 >= kMinPyramidDimension) {
    width /= 2;
    height /= 2;
    ++levels;
  }
  return levels;
}

Plane downsample(const Plane& plane) {
  Plane out(plane.width / 2, plane.height / 2);
  kernels::omp::box_downsample(plane, out);
  return out;
}

Pyramid<Plane> build_pyramid(const Plane& plane) {
  Pyramid<Plane> pyramid;
  pyramid.levels.push_back(plane);
  const int count = pyramid_level_count(plane.width, plane.height);
  for (int k = 1; k < count; ++k) {
    pyramid.levels.push_back(downsample(pyramid.levels.back()));
  }
  return pyramid;
}

Pyramid<RasterImage> build_pyramid(const RasterImage& image) {
  Pyramid<RasterImage> pyramid;
  pyramid.levels.push_back(image);
  const int count = pyramid_level_count(image.width(), image.height());
  for (int k = 1; k < count; ++k) {
    const auto& prev = pyramid.levels.back();
    pyramid.levels.push_back(from_planes(downsample(channel_plane(prev, 0)),
                                         downsample(channel_plane(prev, 1)),
                                         downsample(channel_plane(prev, 2))));
  }
  return pyramid;
}

}  // namespace somqe
