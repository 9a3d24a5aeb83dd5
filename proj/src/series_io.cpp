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

#include "somqe/series_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iterator>
#include <map>
#include <sstream>

#include "somqe/error.hpp"

namespace somqe {
namespace {

std::string_view trim(std::string_view s) {
  const auto blank = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
  while (!s.empty() && blank(s.front())) s.remove_prefix(1);
  while (!s.empty() && blank(s.back())) s.remove_suffix(1);
  return s;
}

}  // namespace

std::optional<double> parse_number(std::string_view text) {
  text = trim(text);
  if (text.size() >= 2 && text.front() == '"' && text.back() == '"') {
    text = trim(text.substr(1, text.size() - 2));
  }
  if (text.empty()) return std::nullopt;
  std::string buf(text);
  const auto comma = std::count(buf.begin(), buf.end(), ',');
  if (comma > 0) {
    if (comma > 1 || buf.find('.') != std::string::npos) return std::nullopt;
    std::replace(buf.begin(), buf.end(), ',', '.');
  }
  const char* first = buf.data();
  const char* last = buf.data() + buf.size();
  if (*first == '+') ++first;
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || !std::isfinite(value)) return std::nullopt;
  return value;
}

std::vector<std::string> split_fields(std::string_view line, char delimiter) {
  std::vector<std::string> fields;
  std::string current;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          current += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        current += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == delimiter) {
      fields.push_back(std::string(trim(current)));
      current.clear();
    } else if (ch != '\r') {
      current += ch;
    }
  }
  fields.push_back(std::string(trim(current)));
  return fields;
}

char detect_delimiter(std::string_view header) {
  if (header.find('\t') != std::string_view::npos) return '\t';
  if (header.find(';') != std::string_view::npos) return ';';
  return ',';
}

CovariateTable parse_covariates(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  std::vector<std::string> header;
  char delimiter = ',';
  CovariateTable table;
  std::map<double, int> seen_years;

  while (std::getline(in, line)) {
    ++line_no;
    const auto body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    if (header.empty()) {
      delimiter = detect_delimiter(body);
      header = split_fields(body, delimiter);
      if (header.size() < 2) {
        throw Error(ErrorCode::Parse, "covariate header needs 'year' plus at least one column");
      }
      for (std::size_t c = 1; c < header.size(); ++c) table.series.push_back({header[c], {}});
      continue;
    }
    const auto fields = split_fields(body, delimiter);
    if (fields.size() != header.size()) {
      throw Error(ErrorCode::Parse, "line " + std::to_string(line_no) + ": expected " +
                                        std::to_string(header.size()) + " fields, found " +
                                        std::to_string(fields.size()));
    }
    std::vector<double> values(fields.size());
    for (std::size_t c = 0; c < fields.size(); ++c) {
      const auto v = parse_number(fields[c]);
      if (!v) {
        throw Error(ErrorCode::Parse, "line " + std::to_string(line_no) + ", column '" +
                                          header[c] + "': cannot parse '" + fields[c] + "'");
      }
      values[c] = *v;
    }
    if (seen_years[values[0]]++ == 1) {
      std::ostringstream w;
      w << "duplicate year " << values[0] << " at line " << line_no << " kept as printed";
      table.warnings.push_back(w.str());
    }
    for (std::size_t c = 1; c < values.size(); ++c) {
      table.series[c - 1].points.push_back({values[0], values[c]});
    }
  }
  if (header.empty()) throw Error(ErrorCode::Parse, "covariate file has no header");
  return table;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

CovariateTable load_covariates(const std::filesystem::path& path) {
  return parse_covariates(read_text_file(path));
}

std::string_view to_string(YearFix fix) {
  return fix == YearFix::AsPrinted ? "as-printed" : "relabel-1990";
}

YearFix parse_year_fix(std::string_view text) {
  if (text == "as-printed") return YearFix::AsPrinted;
  if (text == "relabel-1990") return YearFix::RelabelDuplicate;
  throw Error(ErrorCode::InvalidArgument,
              "unknown year fix '" + std::string(text) + "' (as-printed|relabel-1990)");
}

std::vector<double> apply_year_fix(std::vector<double> years, YearFix fix) {
  if (fix == YearFix::AsPrinted) return years;
  const auto original = years;
  for (std::size_t i = 0; i < years.size(); ++i) {
    const double y = original[i];
    const bool repeated_later = std::find(original.begin() + static_cast<std::ptrdiff_t>(i) + 1,
                                          original.end(), y) != original.end();
    const bool first = std::find(original.begin(), original.begin() + static_cast<std::ptrdiff_t>(i),
                                 y) == original.begin() + static_cast<std::ptrdiff_t>(i);
    const bool gap = std::find(original.begin(), original.end(), y - 1.0) == original.end();
    if (repeated_later && first && gap) years[i] = y - 1.0;
  }
  return years;
}

stats::Series apply_year_fix(stats::Series series, YearFix fix) {
  auto years = apply_year_fix(series.xs(), fix);
  for (std::size_t i = 0; i < years.size(); ++i) series.points[i].x = years[i];
  return series;
}

}  // namespace somqe
