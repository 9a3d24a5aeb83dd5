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

#include <boost/math/distributions/students_t.hpp>

#include <cmath>
#include <random>

#include "somqe/error.hpp"
#include "somqe/series_io.hpp"
#include "somqe/stats.hpp"
#include "stats_oracles.hpp"

using namespace somqe;
using namespace somqe::stats;

namespace {

Series make_series(std::string label, const std::vector<double>& x, const std::vector<double>& y) {
  Series s{std::move(label), {}};
  for (std::size_t i = 0; i < x.size(); ++i) s.points.push_back({x[i], y[i]});
  return s;
}

ErrorCode error_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::InvalidArgument;
}

CovariateTable table(const char* name) {
  return load_covariates(std::string(SOMQE_DATA_DIR) + "/" + name);
}

}  // namespace

TEST_SUITE("stats") {

TEST_CASE("linear_fit: exact line") {
  const auto fit = linear_fit(make_series("line", {1, 2, 3, 4, 5}, {3, 5, 7, 9, 11}));
  CHECK(fit.slope == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(fit.intercept == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(fit.r2 == 1.0);
  CHECK(fit.df == 3);
  CHECK(fit.p == kPFloor);
  CHECK_FALSE(fit.degenerate);
}

TEST_CASE("linear_fit: errors and degenerate y") {
  CHECK(error_of([] { linear_fit(make_series("s", {1, 2}, {1, 2})); }) == ErrorCode::TooFewPoints);
  CHECK(error_of([] { linear_fit(make_series("s", {3, 3, 3}, {1, 2, 3})); }) == ErrorCode::DegenerateX);
  const auto flat = linear_fit(make_series("s", {1, 2, 3}, {4, 4, 4}));
  CHECK(flat.degenerate);
  CHECK(flat.slope == 0.0);
  CHECK(flat.p == 1.0);
}

TEST_CASE("linear_fit reproduces the demographic trend table") {
  const auto demo = table("las_vegas_demographics.tsv");
  REQUIRE(demo.series.size() == 2);
  for (auto fix : {YearFix::AsPrinted, YearFix::RelabelDuplicate}) {
    const auto visitors = linear_fit(apply_year_fix(demo.series[0], fix));
    const auto population = linear_fit(apply_year_fix(demo.series[1], fix));
    CHECK(std::abs(visitors.r2 - 0.9657) <= 0.005);
    CHECK(std::abs(population.r2 - 0.9955) <= 0.005);
    CHECK(std::abs(visitors.slope / 1.1828 - 1.0) < 0.01);
    CHECK(std::abs(population.slope / 19.0723 - 1.0) < 0.01);
    CHECK(visitors.df == 23);
  }
  const auto v = linear_fit(apply_year_fix(demo.series[0], YearFix::RelabelDuplicate));
  CHECK(v.slope == doctest::Approx(1.1828).epsilon(1e-4));
  CHECK(v.intercept == doctest::Approx(-2333.1).epsilon(1e-4));
}

TEST_CASE("linear_fit on the bundled QE table") {
  const auto qe = table("las_vegas_qe.tsv");
  const auto north = linear_fit(qe.series[1]);
  CHECK(std::abs(north.r2 - 0.7995) <= 0.02);
  const auto city = linear_fit(apply_year_fix(qe.series[0], YearFix::RelabelDuplicate));
  CHECK(city.r2 == doctest::Approx(0.4777).epsilon(1e-3));
  // Published slopes read as 1e-3 QE units per year.
  CHECK(city.slope * 1e3 == doctest::Approx(1.554).epsilon(1e-3));
  CHECK(city.intercept == doctest::Approx(-2.8077).epsilon(1e-4));
}

TEST_CASE("two_tailed_p") {
  CHECK(two_tailed_p(0.0, 1) == 1.0);
  CHECK(two_tailed_p(0.0, 40) == 1.0);
  // Expected values from the quadrature oracle.
  CHECK(std::abs(two_tailed_p(2.069, 23) - 0.05) < 0.001);
  CHECK(std::abs(two_tailed_p(3.768, 23) - 0.001) < 0.0002);
  CHECK(std::abs(two_tailed_p(2.069, 23) - testing::student_t_p_by_quadrature(2.069, 23)) < 1e-10);
  CHECK(two_tailed_p(-2.069, 23) == two_tailed_p(2.069, 23));
  CHECK(two_tailed_p(1e6, 3) == kPFloor);
  CHECK(error_of([] { two_tailed_p(1.0, 0); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("two_tailed_p agrees with Boost.Math to 1e-10") {
  for (int df : {1, 2, 3, 5, 10, 23, 50, 200}) {
    const boost::math::students_t dist(df);
    for (double t : {0.1, 0.5, 1.0, 1.96, 2.5, 4.0, 8.0}) {
      const double expected = 2.0 * boost::math::cdf(boost::math::complement(dist, t));
      CHECK(std::abs(two_tailed_p(t, df) - std::max(expected, kPFloor)) < 1e-10);
    }
  }
}

TEST_CASE("property: p strictly decreases as |t| grows") {
  for (int df : {1, 4, 23}) {
    double prev = two_tailed_p(0.0, df);
    for (double t = 0.25; t < 6.0; t += 0.25) {
      const double p = two_tailed_p(t, df);
      CHECK(p < prev);
      prev = p;
    }
  }
}

TEST_CASE("pearson: self, negation and errors") {
  const std::vector<double> a{1, 3, 2, 5, 4};
  std::vector<double> neg;
  for (double v : a) neg.push_back(-v);
  CHECK(pearson(a, a).r == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(pearson(a, neg).r == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(pearson(a, a).df == 3);

  const std::vector<double> shorter{1, 2, 3};
  const std::vector<double> flat{2, 2, 2, 2, 2};
  const std::vector<double> two{1, 2};
  CHECK(error_of([&] { pearson(a, shorter); }) == ErrorCode::LengthMismatch);
  CHECK(error_of([&] { pearson(a, flat); }) == ErrorCode::ZeroVariance);
  CHECK(error_of([&] { pearson(two, two); }) == ErrorCode::TooFewPoints);
}

TEST_CASE("pearson on the bundled tables: positive and significant") {
  const auto qe = table("las_vegas_qe.tsv");
  const auto demo = table("las_vegas_demographics.tsv");
  // r frozen from an independent recomputation (scipy.stats.pearsonr).
  const auto north_pop = pearson(qe.series[1], demo.series[1]);
  CHECK(std::abs(north_pop.r - 0.8858851117932466) < 1e-6);
  CHECK(north_pop.p < 0.001);
  const auto city_vis = pearson(qe.series[0], demo.series[0]);
  CHECK(std::abs(city_vis.r - 0.7136277611122892) < 1e-6);
  CHECK(city_vis.p < 0.001);
  CHECK(city_vis.t == doctest::Approx(std::abs(city_vis.r) * std::sqrt(23 / (1 - city_vis.r * city_vis.r))));
}

TEST_CASE("property: affine invariance of r^2 and r, r^2 == pearson^2") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(-5, 5), scale(0.2, 4);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 3 + rng() % 20;
    std::vector<double> x(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = u(rng);
      y[i] = 0.7 * x[i] + u(rng);
    }
    const auto base = linear_fit(make_series("b", x, y));
    const double a = scale(rng) * (rng() % 2 ? 1 : -1), b = u(rng);
    const double c = scale(rng) * (rng() % 2 ? 1 : -1), d = u(rng);
    std::vector<double> x2(n), y2(n);
    for (std::size_t i = 0; i < n; ++i) {
      x2[i] = a * x[i] + b;
      y2[i] = c * y[i] + d;
    }
    const auto moved = linear_fit(make_series("m", x2, y2));
    CHECK(std::abs(moved.r2 - base.r2) < 1e-12);
    CHECK(moved.slope == doctest::Approx(base.slope * c / a).epsilon(1e-10));

    const double r = pearson(x, y).r;
    CHECK(std::abs(r * r - base.r2) < 1e-12);
    const double r_moved = pearson(x2, y2).r;
    CHECK(std::abs(r_moved - ((a > 0) == (c > 0) ? r : -r)) < 1e-12);
    CHECK(std::abs(r) <= 1.0);
  }
}

TEST_CASE("OLS matches the extended-precision closed form") {
  std::mt19937_64 rng(123);
  std::uniform_real_distribution<double> xs(0, 20), slope(0.5, 3), icpt(1, 50), sd(0.1, 3);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 3 + rng() % 28;
    const double b1 = slope(rng) * (rng() % 2 ? 1 : -1), b0 = icpt(rng);
    std::normal_distribution<double> noise(0, sd(rng));
    std::vector<double> x(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = xs(rng);
      y[i] = b0 + b1 * x[i] + noise(rng);
    }
    const auto fit = linear_fit(make_series("r", x, y));
    const auto oracle = testing::ols_oracle(x, y);
    CHECK(std::abs(fit.slope - static_cast<double>(oracle.slope)) <= 1e-10 * std::abs(static_cast<double>(oracle.slope)));
    CHECK(std::abs(fit.intercept - static_cast<double>(oracle.intercept)) <=
          1e-10 * std::abs(static_cast<double>(oracle.intercept)));
    CHECK(std::abs(fit.r2 - static_cast<double>(oracle.r2)) <= 1e-10 * static_cast<double>(oracle.r2));
  }
}

}  // TEST_SUITE
