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

#include <span>
#include <string>
#include <vector>

namespace somqe::stats {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

struct Series {
  std::string label;
  std::vector<Point> points;

  std::size_t size() const noexcept { return points.size(); }
  std::vector<double> xs() const;
  std::vector<double> ys() const;
};

/// Two-tailed p-values are never reported below this.
inline constexpr double kPFloor = 1e-15;

struct RegressionResult {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
  double t = 0.0;
  int df = 0;
  double p = 1.0;
  /// y has zero variance: r2 is undefined, reported as 0 with t = 0, p = 1.
  bool degenerate = false;
};

struct CorrelationResult {
  double r = 0.0;
  double t = 0.0;
  int df = 0;
  double p = 1.0;
};

/// Ordinary least squares of y on x with r^2 = 1 - SS_res/SS_tot and the
/// slope t-test t = sqrt(r^2 df / (1 - r^2)), df = n - 2.
RegressionResult linear_fit(const Series& series);

/// 2 * (1 - F(|t|; df)) = I_{df/(df+t^2)}(df/2, 1/2), floored at kPFloor.
double two_tailed_p(double t, int df);

/// Regularized incomplete beta I_x(a, b) (continued fraction).
double regularized_incomplete_beta(double x, double a, double b);

/// Sample Pearson correlation of two series paired by position (y values).
CorrelationResult pearson(const Series& a, const Series& b);
CorrelationResult pearson(std::span<const double> a, std::span<const double> b);

}  // namespace somqe::stats
