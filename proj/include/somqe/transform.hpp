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

#include <string_view>

namespace somqe {

enum class TransformMode { Translation, Rigid };

std::string_view to_string(TransformMode mode);
TransformMode parse_transform_mode(std::string_view text);

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

/// Rigid motion about the image center c:
///   T(p) = R(theta) (p - c) + c + (dx, dy)
/// theta is kept in (-pi, pi] and is 0 in translation mode.
struct RegistrationTransform {
  TransformMode mode = TransformMode::Translation;
  double dx = 0.0;
  double dy = 0.0;
  double theta = 0.0;

  static RegistrationTransform identity(TransformMode mode = TransformMode::Translation) {
    return {mode, 0.0, 0.0, 0.0};
  }

  Point2 apply(Point2 p, Point2 center) const noexcept;
  RegistrationTransform inverse() const noexcept;

  bool operator==(const RegistrationTransform&) const = default;
};

/// first, then second.
RegistrationTransform compose(const RegistrationTransform& first,
                              const RegistrationTransform& second) noexcept;

double wrap_angle(double theta) noexcept;

}  // namespace somqe
