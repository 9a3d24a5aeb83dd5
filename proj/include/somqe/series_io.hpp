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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "somqe/stats.hpp"

namespace somqe {

/// Finite decimal number with either '.' or ',' as the decimal separator
/// (e.g. "0,9657"). Surrounding blanks and double quotes are ignored.
std::optional<double> parse_number(std::string_view text);

/// Splits one delimited line; double-quoted fields may contain the delimiter
/// and "" for a literal quote.
std::vector<std::string> split_fields(std::string_view line, char delimiter);

/// Tab if the header has one, else ';' if present, else ','. Comma-decimal
/// values in a comma-delimited file must be quoted.
char detect_delimiter(std::string_view header);

struct CovariateTable {
  std::vector<stats::Series> series;  // x = year, y = value, one per column
  std::vector<std::string> warnings;
};

/// Header "year,<name1>,<name2>,..." then one row per year. Blank lines and
/// '#' comments are skipped. Duplicate years are kept as printed, with a
/// warning.
CovariateTable parse_covariates(std::string_view text);
CovariateTable load_covariates(const std::filesystem::path& path);

enum class YearFix {
  AsPrinted,
  /// The first occurrence of a repeated year y becomes y - 1 when y - 1 is
  /// absent (the "1991, 1991" rows become "1990, 1991").
  RelabelDuplicate,
};

std::string_view to_string(YearFix fix);
YearFix parse_year_fix(std::string_view text);

std::vector<double> apply_year_fix(std::vector<double> years, YearFix fix);
stats::Series apply_year_fix(stats::Series series, YearFix fix);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace somqe
