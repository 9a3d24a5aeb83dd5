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
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "somqe/error.hpp"
#include "somqe/registration.hpp"
#include "somqe/series_io.hpp"
#include "somqe/som.hpp"
#include "somqe/stats.hpp"

namespace somqe {

struct ManifestEntry {
  std::filesystem::path image_path;
  std::string label;
  double year = 0.0;
};

/// One entry per line, "path<TAB>label<TAB>year". Lines starting with '#'
/// are comments, except the directives "# roi: <name>" and
/// "# anchor: last|<index>". Relative paths resolve against the manifest's
/// directory.
struct Manifest {
  std::vector<ManifestEntry> entries;
  std::string roi_name;
  std::optional<std::size_t> anchor_index;  // nullopt: last entry

  void validate() const;
  std::size_t anchor() const noexcept {
    return anchor_index.value_or(entries.empty() ? 0 : entries.size() - 1);
  }
};

Manifest parse_manifest(std::string_view text, const std::filesystem::path& base_dir = {});
Manifest load_manifest(const std::filesystem::path& path);

struct RunConfig {
  TrainingParams som;
  GridSize grid{4, 4};
  TransformMode mode = TransformMode::Translation;
  bool register_images = true;
  bool normalize = true;
  std::optional<std::size_t> anchor_index;  // overrides the manifest
  YearFix year_fix = YearFix::AsPrinted;
  std::filesystem::path out_dir = "somqe-out";
};

/// key=value lines ('#' comments). Keys: grid (WxH), iterations, alpha,
/// radius, decay (constant|linear), seed, mode (translation|rigid),
/// normalize, register (true|false), anchor (last|<index>),
/// year_fix (as-printed|relabel-1990), out.
void apply_config_entry(RunConfig& config, std::string_view key, std::string_view value);
RunConfig parse_config(std::string_view text, RunConfig base = {});
RunConfig load_config(const std::filesystem::path& path, RunConfig base = {});

GridSize parse_grid_size(std::string_view text);
DecayMode parse_decay_mode(std::string_view text);
std::string_view to_string(DecayMode mode);

struct QeRow {
  std::string label;
  double year = 0.0;
  double qe = 0.0;
  std::size_t empty_models = 0;
};

struct CorrelationEntry {
  std::string covariate_label;
  stats::CorrelationResult result;
  std::vector<double> covariate_values;
};

struct QeReport {
  std::string roi_name;
  std::vector<QeRow> rows;
  std::optional<SomGrid> grid;
  std::vector<RegistrationResult> registrations;
  YearFix year_fix = YearFix::AsPrinted;
  /// Absent when fewer than three rows were scored.
  std::optional<stats::RegressionResult> regression;
  std::vector<CorrelationEntry> correlations;
  std::vector<std::string> warnings;

  /// (year, qe) with the year fix applied.
  stats::Series qe_series() const;
  std::vector<double> qe_values() const;
};

/// Error raised by run_pipeline, naming the failing stage and image.
class StageError : public Error {
 public:
  StageError(ErrorCode code, std::string stage, std::optional<std::size_t> index,
             const std::string& message)
      : Error(code, message), stage_(std::move(stage)), index_(index) {}

  const std::string& stage() const noexcept { return stage_; }
  std::optional<std::size_t> index() const noexcept { return index_; }

 private:
  std::string stage_;
  std::optional<std::size_t> index_;
};

/// Register to the anchor, normalize, train on the anchor, score every frame
/// and fit QE against year.
QeReport run_pipeline(const Manifest& manifest, const RunConfig& config);

/// Same, on frames already in memory (entries only supply labels and years).
QeReport run_pipeline(const Manifest& manifest, std::vector<RasterImage> images,
                      const RunConfig& config);

/// Fits QE vs year on the report rows (year fix applied).
void fit_trend(QeReport& report);

/// Appends one Pearson result per covariate, pairing by position.
QeReport correlate(QeReport report, const std::vector<stats::Series>& covariates);

}  // namespace somqe
