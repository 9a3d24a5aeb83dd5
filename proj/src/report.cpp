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

#include "somqe/report.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "somqe/error.hpp"
#include "somqe/series_io.hpp"

namespace somqe {

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::Io, "cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw Error(ErrorCode::Io, "write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw Error(ErrorCode::Io, "cannot rename onto " + path.string() + ": " + ec.message());
}

std::string format_number(double value, int digits) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", digits, value);
  return buf;
}

std::string csv_field(std::string_view text) {
  if (text.find_first_of(",\"\n") == std::string_view::npos) return std::string(text);
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string regression_row(std::string_view label, const stats::RegressionResult& fit) {
  const auto undefined = [&](double v) { return fit.degenerate ? std::string("nan") : format_number(v); };
  return csv_field(label) + "," + format_number(fit.slope) + "," + format_number(fit.intercept) +
         "," + undefined(fit.r2) + "," + undefined(fit.t) + "," + std::to_string(fit.df) + "," +
         undefined(fit.p);
}

std::string correlation_row(std::string_view label, const stats::CorrelationResult& result) {
  return csv_field(label) + "," + format_number(result.r) + "," + format_number(result.t) + "," +
         std::to_string(result.df) + "," + format_number(result.p);
}

std::string format_csv(const QeReport& report) {
  std::string out(kQeHeader);
  out += '\n';
  for (const auto& row : report.rows) {
    out += csv_field(row.label) + "," + format_number(row.year) + "," + format_number(row.qe, 15) +
           "," + std::to_string(row.empty_models) + "\n";
  }
  if (report.regression) {
    out += std::string(kRegressionHeader) + "\n";
    out += regression_row(report.qe_series().label + " vs year", *report.regression) + "\n";
  }
  if (!report.correlations.empty()) {
    out += std::string(kCorrelationHeader) + "\n";
    for (const auto& c : report.correlations) {
      out += correlation_row(report.qe_series().label + " vs " + c.covariate_label, c.result) + "\n";
    }
  }
  return out;
}

void emit_csv(const QeReport& report, const std::filesystem::path& path) {
  write_file_atomic(path, format_csv(report));
}

std::vector<QeRow> parse_qe_rows(std::string_view csv) {
  std::istringstream in{std::string(csv)};
  std::string line;
  std::vector<QeRow> rows;
  bool in_block = false;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line == kQeHeader) {
      in_block = true;
      continue;
    }
    if (!in_block) continue;
    if (line.empty() || line == kRegressionHeader || line == kCorrelationHeader) break;
    const auto f = split_fields(line, ',');
    if (f.size() != 4) {
      throw Error(ErrorCode::Parse, "QE csv line " + std::to_string(line_no) + ": expected 4 fields");
    }
    const auto year = parse_number(f[1]);
    const auto qe = parse_number(f[2]);
    const auto empty = parse_number(f[3]);
    if (!year || !qe || !empty) {
      throw Error(ErrorCode::Parse, "QE csv line " + std::to_string(line_no) + ": bad number");
    }
    rows.push_back({f[0], *year, *qe, static_cast<std::size_t>(*empty)});
  }
  if (!in_block) throw Error(ErrorCode::Parse, "no '" + std::string(kQeHeader) + "' block found");
  return rows;
}

std::string format_transforms(const std::vector<RegistrationResult>& registrations) {
  std::string out;
  for (std::size_t i = 0; i < registrations.size(); ++i) {
    const auto& r = registrations[i];
    out += std::to_string(i) + " " + format_number(r.transform.dx, 15) + " " +
           format_number(r.transform.dy, 15) + " " + format_number(r.transform.theta, 15) + " " +
           format_number(r.residual, 15) + "\n";
  }
  return out;
}

namespace {

std::string xml_escape(std::string_view text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string px(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

struct Axis {
  double lo;
  double hi;
  double step;
};

// Round-number axis covering [lo, hi] with about five ticks.
Axis nice_axis(double lo, double hi) {
  if (!(hi > lo)) {
    const double pad = lo == 0.0 ? 1.0 : std::abs(lo) * 0.1;
    lo -= pad;
    hi += pad;
  }
  const double raw = (hi - lo) / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double frac = raw / mag;
  const double step = (frac <= 1.0 ? 1.0 : frac <= 2.0 ? 2.0 : frac <= 5.0 ? 5.0 : 10.0) * mag;
  return {std::floor(lo / step) * step, std::ceil(hi / step) * step, step};
}

std::string slug(std::string_view text) {
  std::string out;
  for (char c : text) {
    if (std::isalnum(static_cast<unsigned char>(c))) {
      out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    } else if (!out.empty() && out.back() != '_') {
      out += '_';
    }
  }
  while (!out.empty() && out.back() == '_') out.pop_back();
  return out.empty() ? "covariate" : out;
}

}  // namespace

std::string render_svg(const ScatterPlot& plot) {
  constexpr double width = 640, height = 480;
  constexpr double left = 80, right = 30, top = 50, bottom = 60;
  const double plot_w = width - left - right;
  const double plot_h = height - top - bottom;

  double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
  if (!plot.points.empty()) {
    xmin = xmax = plot.points.front().x;
    ymin = ymax = plot.points.front().y;
    for (const auto& p : plot.points) {
      xmin = std::min(xmin, p.x);
      xmax = std::max(xmax, p.x);
      ymin = std::min(ymin, p.y);
      ymax = std::max(ymax, p.y);
    }
  }
  const Axis ax = nice_axis(xmin, xmax);
  const Axis ay = nice_axis(ymin, ymax);
  const auto sx = [&](double x) { return left + (x - ax.lo) / (ax.hi - ax.lo) * plot_w; };
  const auto sy = [&](double y) { return top + plot_h - (y - ay.lo) / (ay.hi - ay.lo) * plot_h; };

  std::ostringstream s;
  s << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
    << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"480\" "
       "viewBox=\"0 0 640 480\" font-family=\"sans-serif\" font-size=\"12\">\n"
    << "<rect x=\"0\" y=\"0\" width=\"640\" height=\"480\" fill=\"white\"/>\n"
    << "<text x=\"320\" y=\"28\" text-anchor=\"middle\" font-size=\"16\">"
    << xml_escape(plot.title) << "</text>\n";

  s << "<g stroke=\"#ccc\" stroke-width=\"1\">\n";
  const int nx = static_cast<int>(std::lround((ax.hi - ax.lo) / ax.step));
  const int ny = static_cast<int>(std::lround((ay.hi - ay.lo) / ay.step));
  for (int i = 0; i <= nx; ++i) {
    const double x = sx(ax.lo + i * ax.step);
    s << "<line x1=\"" << px(x) << "\" y1=\"" << px(top) << "\" x2=\"" << px(x) << "\" y2=\""
      << px(top + plot_h) << "\"/>\n";
  }
  for (int i = 0; i <= ny; ++i) {
    const double y = sy(ay.lo + i * ay.step);
    s << "<line x1=\"" << px(left) << "\" y1=\"" << px(y) << "\" x2=\"" << px(left + plot_w)
      << "\" y2=\"" << px(y) << "\"/>\n";
  }
  s << "</g>\n";

  s << "<rect x=\"" << px(left) << "\" y=\"" << px(top) << "\" width=\"" << px(plot_w)
    << "\" height=\"" << px(plot_h) << "\" fill=\"none\" stroke=\"black\"/>\n";
  s << "<g text-anchor=\"middle\">\n";
  for (int i = 0; i <= nx; ++i) {
    const double v = ax.lo + i * ax.step;
    s << "<text x=\"" << px(sx(v)) << "\" y=\"" << px(top + plot_h + 18) << "\">"
      << format_number(v, 6) << "</text>\n";
  }
  s << "</g>\n<g text-anchor=\"end\">\n";
  for (int i = 0; i <= ny; ++i) {
    const double v = ay.lo + i * ay.step;
    s << "<text x=\"" << px(left - 6) << "\" y=\"" << px(sy(v) + 4) << "\">"
      << format_number(v, 6) << "</text>\n";
  }
  s << "</g>\n";
  s << "<text x=\"" << px(left + plot_w / 2) << "\" y=\"" << px(height - 15)
    << "\" text-anchor=\"middle\">" << xml_escape(plot.x_label) << "</text>\n";
  s << "<text x=\"18\" y=\"" << px(top + plot_h / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
    << px(top + plot_h / 2) << ")\">" << xml_escape(plot.y_label) << "</text>\n";

  if (plot.fit) {
    const auto& f = *plot.fit;
    s << "<line x1=\"" << px(sx(xmin)) << "\" y1=\"" << px(sy(f.intercept + f.slope * xmin))
      << "\" x2=\"" << px(sx(xmax)) << "\" y2=\"" << px(sy(f.intercept + f.slope * xmax))
      << "\" stroke=\"#c0392b\" stroke-width=\"2\"/>\n";
    s << "<text x=\"" << px(left + 10) << "\" y=\"" << px(top + 18) << "\" fill=\"#c0392b\">y = "
      << format_number(f.intercept, 6) << (f.slope < 0 ? " - " : " + ")
      << format_number(std::abs(f.slope), 6) << " x, r² = "
      << (f.degenerate ? std::string("undefined") : format_number(f.r2, 4)) << ", p = "
      << (f.degenerate ? std::string("n/a") : format_number(f.p, 3)) << "</text>\n";
  }

  s << "<g fill=\"#2c3e50\">\n";
  for (const auto& p : plot.points) {
    s << "<circle cx=\"" << px(sx(p.x)) << "\" cy=\"" << px(sy(p.y)) << "\" r=\"4\"/>\n";
  }
  s << "</g>\n</svg>\n";
  return s.str();
}

std::vector<std::filesystem::path> emit_svg_plots(const QeReport& report,
                                                  const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> written;
  const auto qe = report.qe_series();

  ScatterPlot trend;
  trend.title = qe.label + " by year";
  trend.x_label = "year";
  trend.y_label = "SOM-QE";
  trend.points = qe.points;
  trend.fit = report.regression;
  written.push_back(dir / "qe_trend.svg");
  write_file_atomic(written.back(), render_svg(trend));

  for (const auto& c : report.correlations) {
    ScatterPlot plot;
    plot.title = qe.label + " vs " + c.covariate_label;
    plot.x_label = c.covariate_label;
    plot.y_label = "SOM-QE";
    stats::Series paired{plot.title, {}};
    for (std::size_t i = 0; i < c.covariate_values.size() && i < report.rows.size(); ++i) {
      paired.points.push_back({c.covariate_values[i], report.rows[i].qe});
    }
    plot.points = paired.points;
    try {
      plot.fit = stats::linear_fit(paired);
    } catch (const Error&) {
      plot.fit.reset();
    }
    written.push_back(dir / ("qe_vs_" + slug(c.covariate_label) + ".svg"));
    write_file_atomic(written.back(), render_svg(plot));
  }
  return written;
}

}  // namespace somqe
