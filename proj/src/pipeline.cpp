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

#include "somqe/pipeline.hpp"

#include <charconv>
#include <cmath>
#include <exception>
#include <set>
#include <sstream>

#include "somqe/image_io.hpp"
#include "somqe/normalize.hpp"

namespace somqe {
namespace {

std::string_view trim(std::string_view s) {
  const auto blank = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
  while (!s.empty() && blank(s.front())) s.remove_prefix(1);
  while (!s.empty() && blank(s.back())) s.remove_suffix(1);
  return s;
}

std::optional<std::size_t> parse_anchor(std::string_view value) {
  if (value == "last") return std::nullopt;
  const auto v = parse_number(value);
  if (!v || *v < 0 || std::floor(*v) != *v) {
    throw Error(ErrorCode::InvalidArgument, "anchor must be 'last' or an entry index");
  }
  return static_cast<std::size_t>(*v);
}

bool parse_bool(std::string_view key, std::string_view value) {
  if (value == "true" || value == "1" || value == "on" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "off" || value == "no") return false;
  throw Error(ErrorCode::InvalidArgument,
              std::string(key) + " expects true|false, got '" + std::string(value) + "'");
}

double parse_real(std::string_view key, std::string_view value) {
  const auto v = parse_number(value);
  if (!v) {
    throw Error(ErrorCode::InvalidArgument,
                std::string(key) + ": cannot parse '" + std::string(value) + "'");
  }
  return *v;
}

}  // namespace

void Manifest::validate() const {
  if (entries.empty()) throw Error(ErrorCode::InvalidArgument, "manifest has no entries");
  std::set<std::filesystem::path> paths;
  for (const auto& e : entries) {
    if (!paths.insert(e.image_path).second) {
      throw Error(ErrorCode::InvalidArgument, "duplicate manifest path " + e.image_path.string());
    }
    if (!std::isfinite(e.year)) throw Error(ErrorCode::InvalidArgument, "non-finite year");
  }
  if (anchor_index && *anchor_index >= entries.size()) {
    throw Error(ErrorCode::InvalidArgument, "anchor index out of range");
  }
}

Manifest parse_manifest(std::string_view text, const std::filesystem::path& base_dir) {
  Manifest manifest;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto body = trim(line);
    if (body.empty()) continue;
    if (body.front() == '#') {
      auto directive = trim(body.substr(1));
      if (directive.starts_with("roi:")) {
        manifest.roi_name = std::string(trim(directive.substr(4)));
      } else if (directive.starts_with("anchor:")) {
        manifest.anchor_index = parse_anchor(trim(directive.substr(7)));
      }
      continue;
    }
    const auto fields = split_fields(body, '\t');
    if (fields.size() != 3) {
      throw Error(ErrorCode::Parse, "manifest line " + std::to_string(line_no) +
                                        ": expected path<TAB>label<TAB>year");
    }
    const auto year = parse_number(fields[2]);
    if (!year) {
      throw Error(ErrorCode::Parse,
                  "manifest line " + std::to_string(line_no) + ": bad year '" + fields[2] + "'");
    }
    std::filesystem::path path(fields[0]);
    if (path.is_relative() && !base_dir.empty()) path = base_dir / path;
    manifest.entries.push_back({path, fields[1], *year});
  }
  manifest.validate();
  return manifest;
}

Manifest load_manifest(const std::filesystem::path& path) {
  auto manifest = parse_manifest(read_text_file(path), path.parent_path());
  if (manifest.roi_name.empty()) manifest.roi_name = path.stem().string();
  return manifest;
}

GridSize parse_grid_size(std::string_view text) {
  const auto x = text.find_first_of("xX");
  if (x == std::string_view::npos) {
    throw Error(ErrorCode::InvalidArgument, "grid size must look like WxH");
  }
  const auto w = parse_number(text.substr(0, x));
  const auto h = parse_number(text.substr(x + 1));
  if (!w || !h || *w < 1 || *h < 1 || std::floor(*w) != *w || std::floor(*h) != *h) {
    throw Error(ErrorCode::InvalidArgument, "grid size must look like WxH with positive integers");
  }
  return {static_cast<int>(*w), static_cast<int>(*h)};
}

DecayMode parse_decay_mode(std::string_view text) {
  if (text == "constant") return DecayMode::Constant;
  if (text == "linear") return DecayMode::LinearToZero;
  throw Error(ErrorCode::InvalidArgument,
              "unknown decay '" + std::string(text) + "' (constant|linear)");
}

std::string_view to_string(DecayMode mode) {
  return mode == DecayMode::Constant ? "constant" : "linear";
}

void apply_config_entry(RunConfig& config, std::string_view key, std::string_view value) {
  if (key == "grid") {
    config.grid = parse_grid_size(value);
  } else if (key == "iterations") {
    config.som.iterations = static_cast<int>(parse_real(key, value));
  } else if (key == "alpha") {
    config.som.learning_rate = parse_real(key, value);
  } else if (key == "radius") {
    config.som.neighborhood_radius = parse_real(key, value);
  } else if (key == "decay") {
    config.som.decay = parse_decay_mode(value);
  } else if (key == "seed") {
    std::uint64_t seed = 0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), seed);
    if (ec != std::errc() || ptr != value.data() + value.size()) {
      throw Error(ErrorCode::InvalidArgument, "seed must be an unsigned 64-bit integer");
    }
    config.som.seed = seed;
  } else if (key == "mode") {
    config.mode = parse_transform_mode(value);
  } else if (key == "normalize") {
    config.normalize = parse_bool(key, value);
  } else if (key == "register") {
    config.register_images = parse_bool(key, value);
  } else if (key == "anchor") {
    config.anchor_index = parse_anchor(value);
  } else if (key == "year_fix") {
    config.year_fix = parse_year_fix(value);
  } else if (key == "out") {
    config.out_dir = std::string(value);
  } else {
    throw Error(ErrorCode::InvalidArgument, "unknown config key '" + std::string(key) + "'");
  }
}

RunConfig parse_config(std::string_view text, RunConfig base) {
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    const auto eq = body.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorCode::Parse, "config line " + std::to_string(line_no) + ": expected key=value");
    }
    apply_config_entry(base, trim(body.substr(0, eq)), trim(body.substr(eq + 1)));
  }
  base.som.validate();
  return base;
}

RunConfig load_config(const std::filesystem::path& path, RunConfig base) {
  return parse_config(read_text_file(path), std::move(base));
}

stats::Series QeReport::qe_series() const {
  stats::Series s;
  s.label = roi_name.empty() ? "QE" : roi_name + " QE";
  for (const auto& row : rows) s.points.push_back({row.year, row.qe});
  return apply_year_fix(std::move(s), year_fix);
}

std::vector<double> QeReport::qe_values() const {
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& row : rows) out.push_back(row.qe);
  return out;
}

void fit_trend(QeReport& report) {
  report.regression.reset();
  if (report.rows.size() < 3) {
    report.warnings.push_back("fewer than 3 frames: no trend fit");
    return;
  }
  report.regression = stats::linear_fit(report.qe_series());
  if (report.regression->degenerate) {
    report.warnings.push_back("degenerate fit: QE is constant across frames");
  }
}

QeReport run_pipeline(const Manifest& manifest, std::vector<RasterImage> images,
                      const RunConfig& config) {
  manifest.validate();
  config.som.validate();
  if (images.size() != manifest.entries.size()) {
    throw StageError(ErrorCode::InvalidArgument, "load", std::nullopt,
                     "image count differs from manifest entry count");
  }
  const std::size_t anchor = config.anchor_index.value_or(manifest.anchor());
  if (anchor >= images.size()) {
    throw StageError(ErrorCode::InvalidArgument, "load", anchor, "anchor index out of range");
  }
  for (std::size_t i = 0; i < images.size(); ++i) {
    if (images[i].empty()) {
      throw StageError(ErrorCode::EmptyImage, "load", i, "image " + std::to_string(i) + " is empty");
    }
    if (images[i].width() != images[anchor].width() ||
        images[i].height() != images[anchor].height()) {
      throw StageError(ErrorCode::DimensionMismatch, "load", i,
                       "image " + std::to_string(i) + " differs in size from the anchor");
    }
  }

  QeReport report;
  report.roi_name = manifest.roi_name;
  report.year_fix = config.year_fix;

  if (config.register_images) {
    RegistrationOptions options;
    options.mode = config.mode;
    try {
      auto frames = register_stack(images, options, anchor);
      for (std::size_t i = 0; i < frames.size(); ++i) {
        report.registrations.push_back(frames[i].registration);
        images[i] = std::move(frames[i].image);
      }
    } catch (const RegistrationError& e) {
      throw StageError(e.code(), "register", e.image_index(), e.what());
    } catch (const Error& e) {
      throw StageError(e.code(), "register", std::nullopt, e.what());
    }
  } else {
    report.registrations.assign(images.size(), {RegistrationTransform::identity(config.mode), 0.0, 0});
  }

  if (config.normalize) {
    for (auto& image : images) image = normalize_contrast(image);
  }

  try {
    auto grid = initialize_grid(images[anchor], config.grid.width, config.grid.height,
                                config.som.seed);
    report.grid = train(std::move(grid), images[anchor], config.som);
  } catch (const Error& e) {
    throw StageError(e.code(), "train", anchor, e.what());
  }

  for (std::size_t i = 0; i < images.size(); ++i) {
    try {
      const auto qe = quantization_error(images[i], *report.grid);
      report.rows.push_back({manifest.entries[i].label, manifest.entries[i].year, qe.qe,
                             empty_model_count(qe)});
    } catch (const Error& e) {
      throw StageError(e.code(), "score", i, e.what());
    }
  }

  try {
    fit_trend(report);
  } catch (const Error& e) {
    throw StageError(e.code(), "stats", std::nullopt, e.what());
  }
  return report;
}

QeReport run_pipeline(const Manifest& manifest, const RunConfig& config) {
  manifest.validate();
  std::vector<RasterImage> images;
  images.reserve(manifest.entries.size());
  for (std::size_t i = 0; i < manifest.entries.size(); ++i) {
    try {
      images.push_back(load_image(manifest.entries[i].image_path));
    } catch (const Error& e) {
      throw StageError(e.code(), "load", i, e.what());
    }
  }
  return run_pipeline(manifest, std::move(images), config);
}

QeReport correlate(QeReport report, const std::vector<stats::Series>& covariates) {
  const auto qe = report.qe_values();
  const auto report_years = report.qe_series().xs();
  for (const auto& cov : covariates) {
    if (cov.size() != qe.size()) {
      throw Error(ErrorCode::LengthMismatch, "covariate '" + cov.label + "' has " +
                                                 std::to_string(cov.size()) + " values, report has " +
                                                 std::to_string(qe.size()));
    }
    const auto cov_years = apply_year_fix(cov.xs(), report.year_fix);
    for (std::size_t i = 0; i < cov_years.size(); ++i) {
      if (cov_years[i] != report_years[i]) {
        std::ostringstream w;
        w << "covariate '" << cov.label << "' row " << i << " year " << cov_years[i]
          << " paired by position with frame year " << report_years[i];
        report.warnings.push_back(w.str());
        break;
      }
    }
    CorrelationEntry entry;
    entry.covariate_label = cov.label;
    entry.covariate_values = cov.ys();
    entry.result = stats::pearson(std::span<const double>(qe), entry.covariate_values);
    report.correlations.push_back(std::move(entry));
  }
  return report;
}

}  // namespace somqe
