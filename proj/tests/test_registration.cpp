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

#include <doctest.h>

#include <cmath>

#include "somqe/registration.hpp"
#include "somqe/resample.hpp"
#include "test_helpers.hpp"

using namespace somqe;

TEST_SUITE("registration") {

TEST_CASE("an image registered to itself gives the identity") {
  const auto img = testing::smooth_image(128, 96);
  for (auto mode : {TransformMode::Translation, TransformMode::Rigid}) {
    const auto r = register_pair(img, img, mode);
    CHECK(std::abs(r.transform.dx) < 1e-6);
    CHECK(std::abs(r.transform.dy) < 1e-6);
    CHECK(std::abs(r.transform.theta) < 1e-6);
    CHECK(r.residual == 0.0);
  }
}

TEST_CASE("fractional translation (3.5, -2.25) is recovered within 0.1 px") {
  const auto ref = testing::smooth_image(256, 256);
  const RegistrationTransform injected{TransformMode::Translation, 3.5, -2.25, 0.0};
  const auto r = register_pair(ref, resample(ref, injected), TransformMode::Translation);
  CHECK(std::abs(r.transform.dx - 3.5) < 0.1);
  CHECK(std::abs(r.transform.dy + 2.25) < 0.1);
  CHECK(r.transform.theta == 0.0);
}

TEST_CASE("rigid: theta 0.02 rad with (1, -1) px is recovered") {
  const auto ref = testing::smooth_image(256, 256);
  const RegistrationTransform injected{TransformMode::Rigid, 1.0, -1.0, 0.02};
  const auto r = register_pair(ref, resample(ref, injected), TransformMode::Rigid);
  CHECK(std::abs(r.transform.dx - 1.0) < 0.1);
  CHECK(std::abs(r.transform.dy + 1.0) < 0.1);
  CHECK(std::abs(r.transform.theta - 0.02) < 0.005);
}

TEST_CASE("size mismatch is rejected") {
  CHECK_THROWS_AS(register_pair(testing::smooth_image(64, 64), testing::smooth_image(64, 65),
                                TransformMode::Translation),
                  Error);
}

TEST_CASE("non-convergence reports the best transform so far") {
  const auto ref = testing::smooth_image(64, 64);
  const auto test = resample(ref, {TransformMode::Translation, 2.5, 1.5, 0.0});
  RegistrationOptions options;
  options.max_iterations_per_level = 1;
  try {
    register_pair(ref, test, options);
    FAIL("expected non-convergence");
  } catch (const RegistrationError& e) {
    CHECK(e.code() == ErrorCode::NonConvergence);
    CHECK(std::isfinite(e.residual()));
    CHECK(e.best_transform().dx > 0.0);
  }
}

TEST_CASE("register_stack: anchor only") {
  const std::vector<RasterImage> stack{testing::smooth_image(48, 48)};
  const auto frames = register_stack(stack);
  REQUIRE(frames.size() == 1);
  CHECK(frames[0].registration.transform == RegistrationTransform::identity());
  CHECK(frames[0].image == stack[0]);
}

TEST_CASE("register_stack: identical frames all get the identity") {
  const auto img = testing::smooth_image(80, 64);
  const std::vector<RasterImage> stack(4, img);
  for (const auto& f : register_stack(stack)) {
    CHECK(std::abs(f.registration.transform.dx) < 1e-6);
    CHECK(std::abs(f.registration.transform.dy) < 1e-6);
    CHECK(f.image == img);
  }
}

TEST_CASE("register_stack: known shifts are recovered against the last frame") {
  const auto anchor = testing::smooth_image(160, 160);
  const std::vector<std::pair<double, double>> shifts{{1.25, -0.5}, {-4.0, 2.75}, {6.5, 6.0}};
  std::vector<RasterImage> stack;
  for (auto [dx, dy] : shifts) stack.push_back(resample(anchor, {TransformMode::Translation, dx, dy, 0.0}));
  stack.push_back(anchor);
  const auto frames = register_stack(stack);
  REQUIRE(frames.size() == 4);
  for (std::size_t i = 0; i < shifts.size(); ++i) {
    CHECK(std::abs(frames[i].registration.transform.dx - shifts[i].first) < 0.1);
    CHECK(std::abs(frames[i].registration.transform.dy - shifts[i].second) < 0.1);
  }
  CHECK(frames[3].registration.transform == RegistrationTransform::identity());
  CHECK(frames[3].image == anchor);
}

TEST_CASE("register_stack tags failures with the frame index") {
  const auto anchor = testing::smooth_image(64, 64);
  std::vector<RasterImage> stack{anchor, resample(anchor, {TransformMode::Translation, 2.5, 1.5, 0.0}), anchor};
  RegistrationOptions options;
  options.max_iterations_per_level = 1;
  try {
    register_stack(stack, options);
    FAIL("expected non-convergence");
  } catch (const RegistrationError& e) {
    REQUIRE(e.image_index().has_value());
    CHECK(*e.image_index() == 1);
  }
}

}  // TEST_SUITE
