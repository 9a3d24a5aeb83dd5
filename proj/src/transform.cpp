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

#include "somqe/transform.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "somqe/error.hpp"

namespace somqe {

std::string_view to_string(TransformMode mode) {
  return mode == TransformMode::Rigid ? "rigid" : "translation";
}

TransformMode parse_transform_mode(std::string_view text) {
  if (text == "translation") return TransformMode::Translation;
  if (text == "rigid") return TransformMode::Rigid;
  throw Error(ErrorCode::InvalidArgument,
              "unknown registration mode '" + std::string(text) + "' (translation|rigid)");
}

double wrap_angle(double theta) noexcept {
  constexpr double pi = std::numbers::pi;
  if (theta > -pi && theta <= pi) return theta;
  theta = std::remainder(theta, 2.0 * pi);
  if (theta <= -pi) theta += 2.0 * pi;
  return theta;
}

Point2 RegistrationTransform::apply(Point2 p, Point2 center) const noexcept {
  const double u = p.x - center.x;
  const double v = p.y - center.y;
  if (theta == 0.0) return {p.x + dx, p.y + dy};
  const double cs = std::cos(theta);
  const double sn = std::sin(theta);
  return {cs * u - sn * v + center.x + dx, sn * u + cs * v + center.y + dy};
}

RegistrationTransform RegistrationTransform::inverse() const noexcept {
  // T^-1(q) = R(-theta) (q - c - d) + c
  const double cs = std::cos(theta);
  const double sn = std::sin(theta);
  return {mode, -(cs * dx + sn * dy), -(-sn * dx + cs * dy), wrap_angle(-theta)};
}

RegistrationTransform compose(const RegistrationTransform& first,
                              const RegistrationTransform& second) noexcept {
  // second(first(p)) = R2 R1 (p - c) + c + R2 d1 + d2
  const double cs = std::cos(second.theta);
  const double sn = std::sin(second.theta);
  const TransformMode mode = (first.mode == TransformMode::Rigid || second.mode == TransformMode::Rigid)
                                 ? TransformMode::Rigid
                                 : TransformMode::Translation;
  return {mode, cs * first.dx - sn * first.dy + second.dx, sn * first.dx + cs * first.dy + second.dy,
          wrap_angle(first.theta + second.theta)};
}

}  // namespace somqe
