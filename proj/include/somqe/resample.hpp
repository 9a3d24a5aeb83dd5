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

#include "somqe/kernels.hpp"
#include "somqe/raster.hpp"
#include "somqe/transform.hpp"

namespace somqe {

inline Point2 image_center(int width, int height) noexcept {
  return {(width - 1) / 2.0, (height - 1) / 2.0};
}

/// Affine map taking output coordinates to source coordinates for
/// out(p) = in(T^-1(p)).
kernels::AffineMap inverse_sampling_map(const RegistrationTransform& transform, Point2 center);

/// Affine map for out(p) = in(T(p)).
kernels::AffineMap forward_sampling_map(const RegistrationTransform& transform, Point2 center);

/// out(p) = in(T^-1(p)), bilinear per channel, clamp-to-edge, rounded half up.
/// Integer translations copy pixels exactly inside the overlap.
RasterImage resample(const RasterImage& image, const RegistrationTransform& transform);

Plane resample(const Plane& plane, const RegistrationTransform& transform);

}  // namespace somqe
