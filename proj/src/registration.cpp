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

#include "somqe/registration.hpp"

#include <array>
#include <cmath>
#include <exception>
#include <limits>
#include <string>

#include "somqe/kernels.hpp"
#include "somqe/pyramid.hpp"
#include "somqe/resample.hpp"

namespace somqe {
namespace {

// Central differences, one-sided at the borders.
struct Gradient {
  Plane gx;
  Plane gy;
};

Gradient image_gradient(const Plane& p) {
  Gradient g{Plane(p.width, p.height), Plane(p.width, p.height)};
  for (int y = 0; y < p.height; ++y) {
    for (int x = 0; x < p.width; ++x) {
      const int xl = x > 0 ? x - 1 : x;
      const int xr = x + 1 < p.width ? x + 1 : x;
      const int yu = y > 0 ? y - 1 : y;
      const int yd = y + 1 < p.height ? y + 1 : y;
      g.gx.at(x, y) = xr == xl ? 0.0 : (p.at(xr, y) - p.at(xl, y)) / (xr - xl);
      g.gy.at(x, y) = yd == yu ? 0.0 : (p.at(x, yd) - p.at(x, yu)) / (yd - yu);
    }
  }
  return g;
}

using Params = std::array<double, 3>;  // dx, dy, theta

RegistrationTransform to_transform(const Params& p, TransformMode mode) {
  return {mode, p[0], p[1], mode == TransformMode::Rigid ? p[2] : 0.0};
}

struct Evaluation {
  double cost = std::numeric_limits<double>::infinity();  // mean square
  std::size_t valid = 0;
  std::array<std::array<double, 3>, 3> jtj{};
  std::array<double, 3> jtr{};
};

// Residual r(p) = test(T(p)) - ref(p) over pixels whose source lies inside the
// test image. With `jacobian` set, also accumulates J^T J and J^T r.
Evaluation evaluate(const Plane& ref, const Plane& test, const Gradient* grad,
                    const Params& p, TransformMode mode) {
  const int n = mode == TransformMode::Rigid ? 3 : 2;
  const Point2 c = image_center(ref.width, ref.height);
  const auto map = forward_sampling_map(to_transform(p, mode), c);
  const double cs = std::cos(p[2]);
  const double sn = std::sin(p[2]);
  const double max_x = test.width - 1;
  const double max_y = test.height - 1;

  Evaluation e;
  double sum = 0.0;
  for (int y = 0; y < ref.height; ++y) {
    for (int x = 0; x < ref.width; ++x) {
      const double sx = map.a00 * x + map.a01 * y + map.bx;
      const double sy = map.a10 * x + map.a11 * y + map.by;
      if (sx < 0.0 || sy < 0.0 || sx > max_x || sy > max_y) continue;
      const double r = kernels::sample_bilinear(test, sx, sy) - ref.at(x, y);
      sum += r * r;
      ++e.valid;
      if (grad == nullptr) continue;
      const double gx = kernels::sample_bilinear(grad->gx, sx, sy);
      const double gy = kernels::sample_bilinear(grad->gy, sx, sy);
      const double u = x - c.x;
      const double v = y - c.y;
      const std::array<double, 3> j{gx, gy, gx * (-sn * u - cs * v) + gy * (cs * u - sn * v)};
      for (int a = 0; a < n; ++a) {
        e.jtr[a] += j[a] * r;
        for (int b = 0; b < n; ++b) e.jtj[a][b] += j[a] * j[b];
      }
    }
  }
  if (e.valid > 0) e.cost = sum / static_cast<double>(e.valid);
  return e;
}

// Solves (J^T J + lambda diag(J^T J)) delta = -J^T r by Gaussian elimination
// with partial pivoting. Returns false for a singular system.
bool solve_damped(const Evaluation& e, double lambda, int n, Params& delta) {
  double a[3][4] = {};
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a[i][j] = e.jtj[i][j];
    a[i][i] += lambda * e.jtj[i][i];
    a[i][n] = -e.jtr[i];
  }
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    for (int row = col + 1; row < n; ++row) {
      if (std::abs(a[row][col]) > std::abs(a[pivot][col])) pivot = row;
    }
    if (!(std::abs(a[pivot][col]) > 1e-300)) return false;
    if (pivot != col) {
      for (int k = 0; k <= n; ++k) std::swap(a[col][k], a[pivot][k]);
    }
    for (int row = col + 1; row < n; ++row) {
      const double f = a[row][col] / a[col][col];
      for (int k = col; k <= n; ++k) a[row][k] -= f * a[col][k];
    }
  }
  delta = {0.0, 0.0, 0.0};
  for (int row = n - 1; row >= 0; --row) {
    double s = a[row][n];
    for (int k = row + 1; k < n; ++k) s -= a[row][k] * delta[k];
    delta[row] = s / a[row][row];
  }
  return true;
}

struct LevelOutcome {
  Params params;
  double cost;
  int iterations;
  bool converged;
};

LevelOutcome optimize_level(const Plane& ref, const Plane& test, Params p,
                            const RegistrationOptions& opt) {
  const int n = opt.mode == TransformMode::Rigid ? 3 : 2;
  const Gradient grad = image_gradient(test);
  double lambda = opt.initial_damping;
  Evaluation current = evaluate(ref, test, &grad, p, opt.mode);
  if (current.valid == 0) return {p, current.cost, 0, false};

  int it = 0;
  while (it < opt.max_iterations_per_level) {
    ++it;
    Params delta{};
    if (!solve_damped(current, lambda, n, delta)) {
      // Flat image: nothing to descend on.
      return {p, current.cost, it, true};
    }
    const bool small = std::hypot(delta[0], delta[1]) < opt.translation_tolerance &&
                       std::abs(delta[2]) < opt.rotation_tolerance;
    Params candidate = p;
    for (int k = 0; k < n; ++k) candidate[k] += delta[k];
    const Evaluation trial = evaluate(ref, test, nullptr, candidate, opt.mode);
    if (trial.valid > 0 && trial.cost < current.cost) {
      p = candidate;
      current = evaluate(ref, test, &grad, p, opt.mode);
      lambda *= 0.1;
    } else {
      lambda *= 10.0;
    }
    if (small) return {p, current.cost, it, true};
  }
  return {p, current.cost, it, false};
}

}  // namespace

RegistrationResult register_pair(const Plane& reference, const Plane& test,
                                 const RegistrationOptions& options) {
  if (reference.width != test.width || reference.height != test.height) {
    throw Error(ErrorCode::DimensionMismatch, "reference and test differ in size");
  }
  if (reference.values.empty()) throw Error(ErrorCode::EmptyImage, "empty image");

  const auto ref_pyr = build_pyramid(reference);
  const auto test_pyr = build_pyramid(test);
  const int levels = static_cast<int>(ref_pyr.size());

  Params p{0.0, 0.0, 0.0};
  int total_iterations = 0;
  LevelOutcome outcome{p, 0.0, 0, true};
  for (int level = levels - 1; level >= 0; --level) {
    outcome = optimize_level(ref_pyr.levels[static_cast<std::size_t>(level)],
                             test_pyr.levels[static_cast<std::size_t>(level)], p, options);
    total_iterations += outcome.iterations;
    p = outcome.params;
    if (level > 0) {
      p[0] *= 2.0;
      p[1] *= 2.0;
    }
  }

  RegistrationTransform best = to_transform(p, options.mode);
  best.theta = wrap_angle(best.theta);
  if (!outcome.converged) {
    throw RegistrationError("registration did not converge at the finest level (residual " +
                                std::to_string(outcome.cost) + ")",
                            best, outcome.cost);
  }
  return {best, outcome.cost, total_iterations};
}

RegistrationResult register_pair(const RasterImage& reference, const RasterImage& test,
                                 const RegistrationOptions& options) {
  if (reference.width() != test.width() || reference.height() != test.height()) {
    throw Error(ErrorCode::DimensionMismatch, "reference and test differ in size");
  }
  return register_pair(luminance(reference), luminance(test), options);
}

RegistrationResult register_pair(const RasterImage& reference, const RasterImage& test,
                                 TransformMode mode) {
  RegistrationOptions options;
  options.mode = mode;
  return register_pair(reference, test, options);
}

std::vector<RegisteredFrame> register_stack(std::span<const RasterImage> images,
                                            const RegistrationOptions& options,
                                            std::optional<std::size_t> anchor) {
  if (images.empty()) throw Error(ErrorCode::InvalidArgument, "empty image stack");
  const std::size_t anchor_index = anchor.value_or(images.size() - 1);
  if (anchor_index >= images.size()) {
    throw Error(ErrorCode::InvalidArgument, "anchor index out of range");
  }
  const RasterImage& ref = images[anchor_index];
  for (std::size_t i = 0; i < images.size(); ++i) {
    if (images[i].width() != ref.width() || images[i].height() != ref.height()) {
      throw Error(ErrorCode::DimensionMismatch,
                  "image " + std::to_string(i) + " differs in size from the anchor");
    }
  }

  const Plane ref_luma = luminance(ref);
  std::vector<RegisteredFrame> out(images.size());
  std::vector<std::exception_ptr> failures(images.size());
  const auto n = static_cast<std::int64_t>(images.size());

#pragma omp parallel for schedule(dynamic)
  for (std::int64_t k = 0; k < n; ++k) {
    const auto i = static_cast<std::size_t>(k);
    try {
      if (i == anchor_index) {
        out[i] = {{RegistrationTransform::identity(options.mode), 0.0, 0}, images[i]};
        continue;
      }
      auto reg = register_pair(ref_luma, luminance(images[i]), options);
      out[i] = {reg, resample(images[i], reg.transform.inverse())};
    } catch (const RegistrationError& e) {
      failures[i] = std::make_exception_ptr(RegistrationError(
          "image " + std::to_string(i) + ": " + e.what(), e.best_transform(), e.residual(), i));
    } catch (const Error& e) {
      failures[i] = std::make_exception_ptr(
          Error(e.code(), "image " + std::to_string(i) + ": " + e.what()));
    } catch (...) {
      failures[i] = std::current_exception();
    }
  }
  for (const auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }
  return out;
}

}  // namespace somqe
