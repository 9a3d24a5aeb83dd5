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

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "somqe/pipeline.hpp"
#include "somqe/stats.hpp"

namespace somqe {

/// Writes to "<path>.tmp" and renames over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

/// printf "%.<digits>g" with '.' as decimal separator.
std::string format_number(double value, int digits = 10);

std::string csv_field(std::string_view text);

inline constexpr std::string_view kRegressionHeader = "label,slope,intercept,r2,t,df,p";
inline constexpr std::string_view kCorrelationHeader = "label,r,t,df,p";
inline constexpr std::string_view kQeHeader = "label,year,qe,empty_models";

/// "label,slope,intercept,r2,t,df,p" row; r2, t and p read "nan" for a
/// degenerate fit.
std::string regression_row(std::string_view label, const stats::RegressionResult& fit);
std::string correlation_row(std::string_view label, const stats::CorrelationResult& result);

/// QE rows, then the trend row, then correlation rows when present. Each
/// block starts with its own header line.
std::string format_csv(const QeReport& report);
void emit_csv(const QeReport& report, const std::filesystem::path& path);

/// Reads the QE block of a report CSV back (label, year, qe, empty_models).
std::vector<QeRow> parse_qe_rows(std::string_view csv);

/// "index dx dy theta residual" per frame, %.15g.
std::string format_transforms(const std::vector<RegistrationResult>& registrations);

struct ScatterPlot {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<stats::Point> points;
  /// Drawn when set; annotated with the fit equation and r^2.
  std::optional<stats::RegressionResult> fit;
};

/// Static SVG: axes with ticks, points, least-squares line, annotation.
/// Output depends only on the input values.
std::string render_svg(const ScatterPlot& plot);

/// Writes qe_trend.svg plus qe_vs_<covariate>.svg per correlation; returns
/// the written paths.
std::vector<std::filesystem::path> emit_svg_plots(const QeReport& report,
                                                  const std::filesystem::path& dir);

}  // namespace somqe
