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

// Independent reference computations for the statistics tests.

#include <cmath>
#include <span>
#include <vector>

namespace somqe::testing {

/// Two-tailed Student-t p by composite Simpson integration of the density on
/// [0, |t|]: p = 1 - 2 * integral.
inline double student_t_p_by_quadrature(double t, int df, int intervals = 20000) {
  const double nu = df;
  const double norm = std::exp(std::lgamma((nu + 1) / 2) - std::lgamma(nu / 2)) / std::sqrt(nu * M_PI);
  const auto density = [&](double x) { return norm * std::pow(1.0 + x * x / nu, -(nu + 1) / 2); };
  const double b = std::abs(t);
  if (b == 0.0) return 1.0;
  const double h = b / intervals;
  double s = density(0.0) + density(b);
  for (int i = 1; i < intervals; ++i) s += density(i * h) * (i % 2 == 1 ? 4.0 : 2.0);
  return 1.0 - 2.0 * s * h / 3.0;
}

struct OlsOracle {
  long double slope;
  long double intercept;
  long double r2;
};

/// Textbook raw-sum formulas in long double.
inline OlsOracle ols_oracle(std::span<const double> x, std::span<const double> y) {
  const long double n = static_cast<long double>(x.size());
  long double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const long double a = x[i], b = y[i];
    sx += a;
    sy += b;
    sxx += a * a;
    sxy += a * b;
    syy += b * b;
  }
  const long double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  const long double intercept = (sy - slope * sx) / n;
  const long double r = (n * sxy - sx * sy) / std::sqrt((n * sxx - sx * sx) * (n * syy - sy * sy));
  return {slope, intercept, r * r};
}

}  // namespace somqe::testing
