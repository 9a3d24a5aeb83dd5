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

#include "somqe/resample.hpp"

#include <cmath>

namespace somqe {

kernels::AffineMap forward_sampling_map(const RegistrationTransform& t, Point2 c) {
  if (t.theta == 0.0) return {1.0, 0.0, 0.0, 1.0, t.dx, t.dy};
  const double cs = std::cos(t.theta);
  const double sn = std::sin(t.theta);
  return {cs, -sn, sn, cs, c.x + t.dx - (cs * c.x - sn * c.y), c.y + t.dy - (sn * c.x + cs * c.y)};
}

kernels::AffineMap inverse_sampling_map(const RegistrationTransform& t, Point2 c) {
  if (t.theta == 0.0) return {1.0, 0.0, 0.0, 1.0, -t.dx, -t.dy};
  return forward_sampling_map(t.inverse(), c);
}

Plane resample(const Plane& plane, const RegistrationTransform& transform) {
  Plane out(plane.width, plane.height);
  kernels::omp::warp_bilinear(
      plane, inverse_sampling_map(transform, image_center(plane.width, plane.height)), out);
  return out;
}

RasterImage resample(const RasterImage& image, const RegistrationTransform& transform) {
  if (image.empty()) return image;
  return from_planes(resample(channel_plane(image, 0), transform),
                     resample(channel_plane(image, 1), transform),
                     resample(channel_plane(image, 2), transform));
}

}  // namespace somqe
