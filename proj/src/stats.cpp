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

#include "somqe/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "somqe/error.hpp"

namespace somqe::stats {

std::vector<double> Series::xs() const {
  std::vector<double> out;
  out.reserve(points.size());
  for (const auto& p : points) out.push_back(p.x);
  return out;
}

std::vector<double> Series::ys() const {
  std::vector<double> out;
  out.reserve(points.size());
  for (const auto& p : points) out.push_back(p.y);
  return out;
}

namespace {

double mean(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

void require_finite(std::span<const double> v, const char* what) {
  for (double x : v) {
    if (!std::isfinite(x)) {
      throw Error(ErrorCode::InvalidArgument, std::string(what) + " contains a non-finite value");
    }
  }
}

// Modified Lentz evaluation of the continued fraction for I_x(a, b).
double beta_continued_fraction(double x, double a, double b) {
  constexpr double tiny = 1e-300;
  constexpr double eps = 1e-16;
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < tiny) d = tiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= 10000; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < eps) break;
  }
  return h;
}

}  // namespace

double regularized_incomplete_beta(double x, double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "incomplete beta needs a, b > 0");
  }
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                           a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return front * beta_continued_fraction(x, a, b) / a;
  }
  return 1.0 - front * beta_continued_fraction(1.0 - x, b, a) / b;
}

double two_tailed_p(double t, int df) {
  if (df < 1) throw Error(ErrorCode::InvalidArgument, "degrees of freedom must be >= 1");
  if (std::isnan(t)) throw Error(ErrorCode::InvalidArgument, "t statistic is NaN");
  if (std::isinf(t)) return kPFloor;
  const double nu = df;
  const double p = regularized_incomplete_beta(nu / (nu + t * t), nu / 2.0, 0.5);
  return std::max(kPFloor, std::min(1.0, p));
}

RegressionResult linear_fit(const Series& series) {
  const std::size_t n = series.size();
  if (n < 3) {
    throw Error(ErrorCode::TooFewPoints,
                "series '" + series.label + "' has " + std::to_string(n) + " points, need >= 3");
  }
  const auto x = series.xs();
  const auto y = series.ys();
  require_finite(x, "x");
  require_finite(y, "y");

  const double mx = mean(x);
  const double my = mean(y);
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx == 0.0) {
    throw Error(ErrorCode::DegenerateX, "series '" + series.label + "' has zero variance in x");
  }

  RegressionResult r;
  r.df = static_cast<int>(n) - 2;
  r.slope = sxy / sxx;
  r.intercept = my - r.slope * mx;
  if (syy == 0.0) {
    r.degenerate = true;
    return r;
  }
  double ss_res = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double e = y[i] - (r.intercept + r.slope * x[i]);
    ss_res += e * e;
  }
  r.r2 = std::clamp(1.0 - ss_res / syy, 0.0, 1.0);
  r.t = r.r2 < 1.0 ? std::sqrt(r.r2 * r.df / (1.0 - r.r2))
                   : std::numeric_limits<double>::infinity();
  r.p = two_tailed_p(r.t, r.df);
  return r;
}

CorrelationResult pearson(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::LengthMismatch, "paired series differ in length (" +
                                               std::to_string(a.size()) + " vs " +
                                               std::to_string(b.size()) + ")");
  }
  const std::size_t n = a.size();
  if (n < 3) {
    throw Error(ErrorCode::TooFewPoints, "correlation needs >= 3 pairs, got " + std::to_string(n));
  }
  require_finite(a, "first series");
  require_finite(b, "second series");
  const double ma = mean(a);
  const double mb = mean(b);
  double saa = 0.0, sbb = 0.0, sab = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double da = a[i] - ma;
    const double db = b[i] - mb;
    saa += da * da;
    sbb += db * db;
    sab += da * db;
  }
  if (saa == 0.0 || sbb == 0.0) {
    throw Error(ErrorCode::ZeroVariance, "correlation undefined for a constant series");
  }
  CorrelationResult c;
  c.df = static_cast<int>(n) - 2;
  c.r = std::clamp(sab / std::sqrt(saa * sbb), -1.0, 1.0);
  const double r2 = c.r * c.r;
  c.t = r2 < 1.0 ? std::abs(c.r) * std::sqrt(c.df / (1.0 - r2))
                 : std::numeric_limits<double>::infinity();
  c.p = two_tailed_p(c.t, c.df);
  return c;
}

CorrelationResult pearson(const Series& a, const Series& b) {
  const auto ya = a.ys();
  const auto yb = b.ys();
  return pearson(ya, yb);
}

}  // namespace somqe::stats
