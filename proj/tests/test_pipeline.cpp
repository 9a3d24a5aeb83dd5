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

#include <omp.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include "somqe/grid_io.hpp"
#include "somqe/image_io.hpp"
#include "somqe/pipeline.hpp"
#include "somqe/report.hpp"
#include "test_helpers.hpp"

using namespace somqe;

namespace {

Manifest synthetic_manifest(std::size_t n, std::size_t anchor) {
  Manifest m;
  m.roi_name = "Synth";
  for (std::size_t i = 0; i < n; ++i) {
    m.entries.push_back({"frame" + std::to_string(i) + ".ppm", "f" + std::to_string(i),
                         2000.0 + static_cast<double>(i)});
  }
  m.anchor_index = anchor;
  return m;
}

RunConfig bare_config() {
  RunConfig c;
  c.register_images = false;
  c.normalize = false;
  return c;
}

/// Image of colour a where the first `b_count` pixels in row-major order are colour b.
RasterImage two_colour(int w, int h, std::array<std::uint8_t, 3> a, std::array<std::uint8_t, 3> b,
                       std::size_t b_count) {
  RasterImage img(w, h);
  for (std::size_t i = 0; i < img.pixel_count(); ++i) img.set_pixel(i, i < b_count ? b : a);
  return img;
}

/// Minimal XML well-formedness check: balanced, properly nested tags under one root.
bool well_formed_xml(const std::string& doc, std::string& root) {
  std::vector<std::string> stack;
  std::size_t pos = 0;
  int roots = 0;
  while ((pos = doc.find('<', pos)) != std::string::npos) {
    const auto end = doc.find('>', pos);
    if (end == std::string::npos) return false;
    const std::string tag = doc.substr(pos + 1, end - pos - 1);
    pos = end + 1;
    if (tag.empty()) return false;
    if (tag.front() == '?' || tag.front() == '!') continue;
    if (tag.front() == '/') {
      if (stack.empty() || stack.back() != tag.substr(1)) return false;
      stack.pop_back();
      continue;
    }
    const std::string name = tag.substr(0, tag.find_first_of(" \n\t/"));
    if (stack.empty()) {
      ++roots;
      root = name;
    }
    if (tag.back() != '/') stack.push_back(name);
  }
  return stack.empty() && roots == 1;
}

std::string slurp(const std::filesystem::path& p) { return read_text_file(p); }

/// Writes the frames and a manifest into dir; returns the manifest path.
std::filesystem::path write_stack(const std::filesystem::path& dir, const std::vector<RasterImage>& frames) {
  std::ostringstream manifest;
  manifest << "# roi: Synth\n";
  for (std::size_t i = 0; i < frames.size(); ++i) {
    const auto name = "frame" + std::to_string(i) + ".ppm";
    save_image(frames[i], dir / name);
    manifest << name << "\tf" << i << "\t" << 2000 + i << "\n";
  }
  std::ofstream(dir / "stack.tsv") << manifest.str();
  return dir / "stack.tsv";
}

std::vector<RasterImage> textured_stack(std::size_t n) {
  std::vector<RasterImage> frames;
  for (std::size_t k = 0; k < n; ++k) {
    auto img = testing::smooth_image(64, 64);
    // Growing bright block in the lower right corner.
    const int side = static_cast<int>(4 * k);
    for (int y = 64 - side; y < 64; ++y) {
      for (int x = 64 - side; x < 64; ++x) {
        for (int c = 0; c < 3; ++c) img.at(x, y, c) = 250;
      }
    }
    frames.push_back(std::move(img));
  }
  return frames;
}

}  // namespace

TEST_SUITE("pipeline") {

TEST_CASE("identical constant frames: equal QE and a degenerate trend") {
  const auto img = testing::uniform_image(16, 16, 90, 120, 30);
  const auto report = run_pipeline(synthetic_manifest(3, 2), {img, img, img}, RunConfig{});
  REQUIRE(report.rows.size() == 3);
  CHECK(report.rows[0].qe == report.rows[1].qe);
  CHECK(report.rows[1].qe == report.rows[2].qe);
  REQUIRE(report.regression);
  CHECK(report.regression->degenerate);
  CHECK_FALSE(report.warnings.empty());
  const auto csv = format_csv(report);
  CHECK(csv.find("Synth QE vs year,0,") != std::string::npos);
  CHECK(csv.find(",nan,nan,1,nan\n") != std::string::npos);
}

TEST_CASE("built-up fraction series: QE equals the hand count and increases strictly") {
  const std::array<std::uint8_t, 3> a{40, 90, 60}, b{220, 210, 200};
  const double d = std::sqrt(std::pow(180.0 / 255, 2) + std::pow(120.0 / 255, 2) + std::pow(140.0 / 255, 2));
  std::vector<RasterImage> frames;
  for (std::size_t k = 0; k < 10; ++k) frames.push_back(two_colour(20, 20, a, b, 4 * 10 * k));
  const auto report = run_pipeline(synthetic_manifest(10, 0), frames, bare_config());
  for (std::size_t k = 0; k < 10; ++k) {
    // Every model equals colour a, so only the b pixels contribute distance d.
    CHECK(report.rows[k].qe == doctest::Approx(d * 0.1 * static_cast<double>(k)).epsilon(1e-14));
    if (k > 0) CHECK(report.rows[k].qe > report.rows[k - 1].qe);
  }
  REQUIRE(report.regression);
  CHECK(report.regression->slope > 0);
  CHECK(report.regression->p < 0.001);
}

TEST_CASE("textured stack with normalization increases") {
  const auto frames = textured_stack(10);
  RunConfig config;
  config.register_images = false;
  const auto report = run_pipeline(synthetic_manifest(10, 0), frames, config);
  for (std::size_t k = 1; k < 10; ++k) CHECK(report.rows[k].qe > report.rows[k - 1].qe);
  CHECK(report.regression->p < 0.001);
}

TEST_CASE("report rows follow manifest order and the anchor transform is identity") {
  const auto frames = textured_stack(4);
  auto manifest = synthetic_manifest(4, 1);
  std::swap(manifest.entries[0], manifest.entries[3]);
  const auto report = run_pipeline(manifest, frames, RunConfig{});
  REQUIRE(report.rows.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) CHECK(report.rows[i].label == manifest.entries[i].label);
  REQUIRE(report.registrations.size() == 4);
  const auto& t = report.registrations[1].transform;
  CHECK(t.dx == 0.0);
  CHECK(t.dy == 0.0);
  CHECK(t.theta == 0.0);
}

TEST_CASE("aligned full-contrast stack: preprocessing leaves QE unchanged") {
  auto base = testing::smooth_image(48, 48);
  for (int c = 0; c < 3; ++c) {
    base.at(0, 0, c) = 0;
    base.at(47, 47, c) = 255;
  }
  const std::vector<RasterImage> frames{base, base, base, base};
  const auto with = run_pipeline(synthetic_manifest(4, 3), frames, RunConfig{});
  const auto without = run_pipeline(synthetic_manifest(4, 3), frames, bare_config());
  for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(with.rows[i].qe - without.rows[i].qe) <= 1e-12);
}

TEST_CASE("stage errors carry the stage and frame index") {
  const auto img = testing::uniform_image(8, 8, 1, 2, 3);
  try {
    run_pipeline(synthetic_manifest(3, 0), {img, testing::uniform_image(9, 8, 1, 2, 3), img}, RunConfig{});
    FAIL("expected a stage error");
  } catch (const StageError& e) {
    CHECK(e.code() == ErrorCode::DimensionMismatch);
    CHECK(e.stage() == "load");
    CHECK(e.index() == std::optional<std::size_t>(1));
  }
  Manifest missing = synthetic_manifest(2, 0);
  missing.entries[1].image_path = "/nonexistent/frame.ppm";
  missing.entries[0].image_path = "/nonexistent/frame0.ppm";
  try {
    run_pipeline(missing, RunConfig{});
    FAIL("expected a stage error");
  } catch (const StageError& e) {
    CHECK(e.code() == ErrorCode::Io);
    CHECK(e.index() == std::optional<std::size_t>(0));
  }
}

TEST_CASE("fit_trend warns below three frames") {
  QeReport r;
  r.rows = {{"a", 2000, 0.1, 0}, {"b", 2001, 0.2, 0}};
  fit_trend(r);
  CHECK_FALSE(r.regression);
  CHECK_FALSE(r.warnings.empty());
}

TEST_CASE("fit_trend on three exact points") {
  QeReport r;
  r.rows = {{"a", 2000, 0.1, 0}, {"b", 2001, 0.2, 0}, {"c", 2002, 0.3, 0}};
  fit_trend(r);
  REQUIRE(r.regression);
  CHECK(r.regression->slope == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(r.regression->intercept == doctest::Approx(-199.9).epsilon(1e-12));
  CHECK(r.regression->r2 == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.regression->df == 1);
  CHECK(r.regression->p < 1e-6);
}

TEST_CASE("golden CSV for a hand-built report") {
  QeReport r;
  r.roi_name = "Strip";
  r.rows = {{"2000", 2000, 0.1, 0}, {"2001", 2001, 0.2, 3}, {"2002", 2002, 0.3, 0}};
  stats::RegressionResult fit;
  fit.slope = 0.1;
  fit.intercept = -199.9;
  fit.r2 = 1.0;
  fit.t = INFINITY;
  fit.df = 1;
  fit.p = stats::kPFloor;
  r.regression = fit;
  const std::string expected =
      "label,year,qe,empty_models\n"
      "2000,2000,0.1,0\n"
      "2001,2001,0.2,3\n"
      "2002,2002,0.3,0\n"
      "label,slope,intercept,r2,t,df,p\n"
      "Strip QE vs year,0.1,-199.9,1,inf,1,1e-15\n";
  CHECK(format_csv(r) == expected);

  CorrelationEntry c;
  c.covariate_label = "visitors, total";
  c.result = {0.5, 0.57735026918962573, 1, 0.66666666666666663};
  r.correlations.push_back(c);
  CHECK(format_csv(r) == expected +
                             "label,r,t,df,p\n"
                             "\"Strip QE vs visitors, total\",0.5,0.5773502692,1,0.6666666667\n");
}

TEST_CASE("parse_qe_rows round-trips the QE block") {
  QeReport r;
  r.roi_name = "X";
  r.rows = {{"a,b", 1990, 0.123456789012345, 1}, {"c", 1991, 1.0 / 3.0, 0}, {"d", 1992, 0.5, 2}};
  fit_trend(r);
  const auto rows = parse_qe_rows(format_csv(r));
  REQUIRE(rows.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(rows[i].label == r.rows[i].label);
    CHECK(rows[i].year == r.rows[i].year);
    CHECK(rows[i].qe == doctest::Approx(r.rows[i].qe).epsilon(1e-14));
    CHECK(rows[i].empty_models == r.rows[i].empty_models);
  }
  CHECK_THROWS_AS(parse_qe_rows("nothing here\n"), Error);
}

TEST_CASE("correlate pairs by position and rejects length mismatch") {
  QeReport r;
  r.roi_name = "X";
  r.rows = {{"a", 2000, 0.1, 0}, {"b", 2001, 0.25, 0}, {"c", 2002, 0.3, 0}, {"d", 2003, 0.5, 0}};
  const stats::Series good{"pop", {{2000, 1}, {2001, 2}, {2002, 3}, {2003, 4}}};
  const stats::Series shifted{"vis", {{1999, 1}, {2000, 2}, {2001, 3}, {2002, 4}}};
  const auto out = correlate(r, {good, shifted});
  REQUIRE(out.correlations.size() == 2);
  CHECK(out.correlations[0].result.r == doctest::Approx(out.correlations[1].result.r));
  CHECK(out.correlations[0].result.r > 0.9);
  CHECK(out.warnings.size() == 1);
  const stats::Series short_series{"s", {{2000, 1}, {2001, 2}, {2002, 3}}};
  try {
    correlate(r, {short_series});
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::LengthMismatch);
  }
}

TEST_CASE("SVG plots are well-formed") {
  QeReport r;
  r.roi_name = "A&B <roi>";
  r.rows = {{"a", 2000, 0.1, 0}, {"b", 2001, 0.25, 0}, {"c", 2002, 0.3, 0}};
  fit_trend(r);
  r = correlate(r, {stats::Series{"Visitors (M)", {{2000, 5}, {2001, 3}, {2002, 9}}}});
  const auto dir = testing::temp_dir("svg");
  const auto files = emit_svg_plots(r, dir);
  REQUIRE(files.size() == 2);
  CHECK(files[1].filename() == "qe_vs_visitors_m.svg");
  for (const auto& f : files) {
    const auto doc = slurp(f);
    std::string root;
    CHECK(well_formed_xml(doc, root));
    CHECK(root == "svg");
    CHECK(doc.find("<circle") != std::string::npos);
  }
  std::string root;
  CHECK(well_formed_xml(render_svg(ScatterPlot{}), root));
  CHECK_FALSE(well_formed_xml("<svg><g></svg>", root));
}

TEST_CASE("atomic write replaces content and leaves no temporary") {
  const auto dir = testing::temp_dir("atomic");
  write_file_atomic(dir / "out.txt", "first");
  write_file_atomic(dir / "out.txt", "second");
  CHECK(slurp(dir / "out.txt") == "second");
  CHECK_FALSE(std::filesystem::exists(dir / "out.txt.tmp"));
  CHECK_THROWS_AS(write_file_atomic(dir / "missing" / "x.txt", "x"), Error);
}

TEST_CASE("file-based runs are byte-identical across runs and thread counts") {
  const auto dir = testing::temp_dir("determinism");
  const auto manifest = load_manifest(write_stack(dir, textured_stack(5)));
  RunConfig config;
  config.som.seed = 7;
  std::vector<std::string> outputs;
  const int saved = omp_get_max_threads();
  for (int threads : {1, 4, 1}) {
    omp_set_num_threads(threads);
    const auto report = run_pipeline(manifest, config);
    outputs.push_back(format_csv(report) + format_grid(*report.grid) +
                      format_transforms(report.registrations));
  }
  omp_set_num_threads(saved);
  CHECK(outputs[0] == outputs[1]);
  CHECK(outputs[0] == outputs[2]);
  CHECK(outputs[0].find("Synth QE vs year") != std::string::npos);
}

}  // TEST_SUITE
