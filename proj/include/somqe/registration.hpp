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

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "somqe/error.hpp"
#include "somqe/raster.hpp"
#include "somqe/transform.hpp"

namespace somqe {

struct RegistrationOptions {
  TransformMode mode = TransformMode::Translation;
  int max_iterations_per_level = 50;
  double translation_tolerance = 1e-4;  // px
  double rotation_tolerance = 1e-6;     // rad
  double initial_damping = 1e-3;
};

struct RegistrationResult {
  /// Maps reference coordinates into the test image: test(T(p)) ~ reference(p).
  RegistrationTransform transform;
  /// Mean-square luminance difference over the valid overlap at the finest level.
  double residual = 0.0;
  int iterations = 0;
};

class RegistrationError : public Error {
 public:
  RegistrationError(const std::string& message, RegistrationTransform best, double residual,
                    std::optional<std::size_t> image_index = std::nullopt)
      : Error(ErrorCode::NonConvergence, message),
        best_(best), residual_(residual), image_index_(image_index) {}

  const RegistrationTransform& best_transform() const noexcept { return best_; }
  double residual() const noexcept { return residual_; }
  std::optional<std::size_t> image_index() const noexcept { return image_index_; }

 private:
  RegistrationTransform best_;
  double residual_;
  std::optional<std::size_t> image_index_;
};

/// Levenberg-Marquardt minimization of the mean-square luminance difference,
/// coarse to fine over box-filter pyramids. Throws RegistrationError when the
/// finest level does not converge.
RegistrationResult register_pair(const Plane& reference, const Plane& test,
                                 const RegistrationOptions& options = {});
RegistrationResult register_pair(const RasterImage& reference, const RasterImage& test,
                                 TransformMode mode);
RegistrationResult register_pair(const RasterImage& reference, const RasterImage& test,
                                 const RegistrationOptions& options);

struct RegisteredFrame {
  RegistrationResult registration;
  RasterImage image;
};

/// Registers every frame directly against the anchor (default: the last
/// frame) and resamples it into the anchor's frame. The anchor gets the
/// identity. Frames are processed concurrently.
std::vector<RegisteredFrame> register_stack(std::span<const RasterImage> images,
                                            const RegistrationOptions& options = {},
                                            std::optional<std::size_t> anchor = std::nullopt);

}  // namespace somqe
