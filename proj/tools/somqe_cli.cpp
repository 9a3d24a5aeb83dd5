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

// somqe command line: register, train, score, stats, correlate, run, plot.
//
// Exit codes: 0 success, 1 input error, 2 computation error. Failures print a
// single line on stderr:
//   somqe: error code=<code> stage=<stage> index=<i|-> message="<text>"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "somqe/grid_io.hpp"
#include "somqe/image_io.hpp"
#include "somqe/normalize.hpp"
#include "somqe/pipeline.hpp"
#include "somqe/report.hpp"
#include "somqe/series_io.hpp"
#include "somqe/som.hpp"

namespace fs = std::filesystem;
using namespace somqe;

namespace {

struct Overrides {
  std::optional<std::string> config;
  std::optional<std::string> seed;
  std::optional<std::string> grid;
  std::optional<std::string> iterations;
  std::optional<std::string> alpha;
  std::optional<std::string> radius;
  std::optional<std::string> decay;
  std::optional<std::string> mode;
  std::optional<std::string> out;
  std::optional<std::string> anchor;
  std::optional<std::string> year_fix;
  bool no_register = false;
  bool no_normalize = false;

  RunConfig resolve() const {
    RunConfig config;
    if (this->config) config = load_config(*this->config);
    const auto set = [&](const char* key, const std::optional<std::string>& v) {
      if (v) apply_config_entry(config, key, *v);
    };
    set("seed", seed);
    set("grid", grid);
    set("iterations", iterations);
    set("alpha", alpha);
    set("radius", radius);
    set("decay", decay);
    set("mode", mode);
    set("out", out);
    set("anchor", anchor);
    set("year_fix", year_fix);
    if (no_register) config.register_images = false;
    if (no_normalize) config.normalize = false;
    config.som.validate();
    return config;
  }
};

void add_config_flags(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config, "key=value config file (flags override it)");
  cmd->add_option("--seed", o.seed, "RNG seed (uint64)");
  cmd->add_option("--out", o.out, "output directory or file");
}

void add_som_flags(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--grid", o.grid, "map size WxH (default 4x4)");
  cmd->add_option("--iterations", o.iterations, "training presentations (default 1000)");
  cmd->add_option("--alpha", o.alpha, "learning rate (default 0.2)");
  cmd->add_option("--radius", o.radius, "bubble neighborhood radius (default 1.2)");
  cmd->add_option("--decay", o.decay, "constant|linear (default constant)");
}

void add_preprocess_flags(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--mode", o.mode, "registration transform: translation|rigid");
  cmd->add_option("--anchor", o.anchor, "anchor frame: last|<index>");
  cmd->add_flag("--no-register", o.no_register, "skip co-registration");
  cmd->add_flag("--no-normalize", o.no_normalize, "skip contrast normalization");
}

fs::path out_dir(const RunConfig& config) {
  fs::create_directories(config.out_dir);
  return config.out_dir;
}

// A path with an extension names a file; anything else is a directory.
fs::path out_file(const RunConfig& config, const char* default_name) {
  const fs::path& target = config.out_dir;
  if (target.has_extension() && !fs::is_directory(target)) {
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    return target;
  }
  return out_dir(config) / default_name;
}

std::vector<stats::Series> covariates_from(const std::string& path) {
  auto table = load_covariates(path);
  for (const auto& w : table.warnings) std::cerr << "somqe: warning: " << w << "\n";
  return table.series;
}

QeReport report_from_csv(const std::string& path, const RunConfig& config) {
  QeReport report;
  report.rows = parse_qe_rows(read_text_file(path));
  report.roi_name = fs::path(path).stem().string();
  report.year_fix = config.year_fix;
  fit_trend(report);
  return report;
}

void print_warnings(const QeReport& report) {
  for (const auto& w : report.warnings) std::cerr << "somqe: warning: " << w << "\n";
}

int cmd_register(const std::string& manifest_path, const Overrides& o) {
  const auto config = o.resolve();
  const auto manifest = load_manifest(manifest_path);
  std::vector<RasterImage> images;
  for (const auto& e : manifest.entries) images.push_back(load_image(e.image_path));
  RegistrationOptions options;
  options.mode = config.mode;
  const auto frames =
      register_stack(images, options, config.anchor_index ? config.anchor_index : manifest.anchor_index);
  const auto dir = out_dir(config);
  std::vector<RegistrationResult> results;
  for (std::size_t i = 0; i < frames.size(); ++i) {
    results.push_back(frames[i].registration);
    save_image(frames[i].image,
               dir / (std::to_string(i) + "_" + manifest.entries[i].image_path.stem().string() + ".ppm"));
  }
  write_file_atomic(dir / "transforms.txt", format_transforms(results));
  std::cout << format_transforms(results);
  return 0;
}

int cmd_train(const std::string& image_path, const std::string& search, bool normalize,
              const Overrides& o) {
  auto config = o.resolve();
  auto image = load_image(image_path);
  if (normalize) image = normalize_contrast(image);
  GridSize size = config.grid;
  if (!search.empty()) {
    std::vector<GridSize> candidates;
    for (const auto& token : split_fields(search, ',')) candidates.push_back(parse_grid_size(token));
    const auto report = map_size_search(image, candidates, config.som);
    std::cout << "size,qe,empty_models\n";
    for (const auto& e : report.entries) {
      std::cout << e.size.width << "x" << e.size.height << "," << format_number(e.qe, 15) << ","
                << e.empty_models << "\n";
    }
    std::cout << "# chosen " << report.chosen.width << "x" << report.chosen.height
              << (report.all_candidates_have_empty_models ? " (every candidate left models empty)" : "")
              << "\n";
    size = report.chosen;
  }
  auto grid = initialize_grid(image, size.width, size.height, config.som.seed);
  grid = train(std::move(grid), image, config.som);
  fs::path target = o.out ? fs::path(*o.out) : fs::path("grid.txt");
  if (fs::is_directory(target)) target /= "grid.txt";
  save_grid(grid, target);
  std::cerr << "somqe: wrote " << target.string() << "\n";
  return 0;
}

int cmd_score(const std::string& grid_path, const std::string& manifest_path,
              const std::vector<std::string>& images, bool normalize, const Overrides& o) {
  const auto config = o.resolve();
  const auto grid = load_grid(grid_path);
  QeReport report;
  report.year_fix = config.year_fix;
  report.grid = grid;
  std::vector<ManifestEntry> entries;
  if (!manifest_path.empty()) {
    const auto manifest = load_manifest(manifest_path);
    report.roi_name = manifest.roi_name;
    entries = manifest.entries;
  }
  for (std::size_t i = 0; i < images.size(); ++i) {
    entries.push_back({images[i], fs::path(images[i]).stem().string(), static_cast<double>(i)});
  }
  for (const auto& e : entries) {
    auto image = load_image(e.image_path);
    if (normalize) image = normalize_contrast(image);
    const auto qe = quantization_error(image, grid);
    report.rows.push_back({e.label, e.year, qe.qe, empty_model_count(qe)});
  }
  fit_trend(report);
  print_warnings(report);
  const auto csv = format_csv(report);
  if (o.out) emit_csv(report, out_file(config, "qe.csv"));
  std::cout << csv;
  return 0;
}

int cmd_stats(const std::string& covariates_path, const std::string& qe_path, const Overrides& o) {
  const auto config = o.resolve();
  std::vector<stats::Series> series;
  if (!covariates_path.empty()) series = covariates_from(covariates_path);
  if (!qe_path.empty()) series.push_back(report_from_csv(qe_path, config).qe_series());
  if (series.empty()) throw Error(ErrorCode::InvalidArgument, "stats needs --covariates or --qe");

  std::string out(kRegressionHeader);
  out += "\n";
  std::string notes;
  for (auto s : series) {
    s = apply_year_fix(std::move(s), config.year_fix);
    const auto fit = stats::linear_fit(s);
    out += regression_row(s.label, fit) + "\n";
    notes += "# " + s.label + ": slope " + format_number(fit.slope) + " per year = " +
             format_number(fit.slope * 1e3) + " x 1e-3 per year\n";
  }
  notes += "# df = n - 2 for the slope t-test (F-style tables print this as (1, n - 1))\n";
  notes += "# year labels: " + std::string(to_string(config.year_fix)) + "\n";
  if (o.out) write_file_atomic(fs::path(*o.out), out);
  std::cout << out << notes;
  return 0;
}

int cmd_correlate(const std::string& qe_path, const std::string& covariates_path,
                  const Overrides& o) {
  const auto config = o.resolve();
  auto report = correlate(report_from_csv(qe_path, config), covariates_from(covariates_path));
  print_warnings(report);
  std::string out(kCorrelationHeader);
  out += "\n";
  for (const auto& c : report.correlations) {
    out += correlation_row(report.qe_series().label + " vs " + c.covariate_label, c.result) + "\n";
  }
  if (o.out) write_file_atomic(fs::path(*o.out), out);
  std::cout << out;
  return 0;
}

int cmd_run(const std::string& manifest_path, const std::string& covariates_path,
            const Overrides& o) {
  const auto config = o.resolve();
  const auto manifest = load_manifest(manifest_path);
  auto report = run_pipeline(manifest, config);
  if (!covariates_path.empty()) report = correlate(std::move(report), covariates_from(covariates_path));
  print_warnings(report);
  const auto dir = out_dir(config);
  emit_csv(report, dir / "report.csv");
  save_grid(*report.grid, dir / "grid.txt");
  write_file_atomic(dir / "transforms.txt", format_transforms(report.registrations));
  emit_svg_plots(report, dir);
  std::cout << format_csv(report);
  return 0;
}

int cmd_plot(const std::string& qe_path, const std::string& covariates_path, const Overrides& o) {
  const auto config = o.resolve();
  auto report = report_from_csv(qe_path, config);
  if (!covariates_path.empty()) report = correlate(std::move(report), covariates_from(covariates_path));
  print_warnings(report);
  for (const auto& p : emit_svg_plots(report, out_dir(config))) std::cout << p.string() << "\n";
  return 0;
}

std::string quote(const std::string& text) {
  std::string out = "\"";
  for (char c : text) {
    if (c == '"' || c == '\\') out += '\\';
    out += c == '\n' ? ' ' : c;
  }
  return out + "\"";
}

int report_failure(ErrorCode code, const std::string& stage, std::optional<std::size_t> index,
                   const std::string& message) {
  std::cerr << "somqe: error code=" << to_string(code) << " stage=" << stage
            << " index=" << (index ? std::to_string(*index) : std::string("-"))
            << " message=" << quote(message) << "\n";
  return is_computation_error(code) ? 2 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SOM quantization-error change detection for image time series"};
  app.require_subcommand(1);
  Overrides o;
  std::string manifest, covariates, qe, grid_path, image, search;
  std::vector<std::string> images;
  bool normalize = false;

  auto* reg = app.add_subcommand("register", "co-register a manifest's frames to the anchor");
  reg->add_option("--manifest", manifest, "manifest file")->required();
  add_config_flags(reg, o);
  add_preprocess_flags(reg, o);

  auto* tr = app.add_subcommand("train", "train a SOM on one image and save the grid");
  tr->add_option("image", image, "training image (PPM/PNG)")->required();
  tr->add_option("--search", search, "candidate sizes for map-size search, e.g. 2x2,3x3,4x4");
  tr->add_flag("--normalize", normalize, "contrast-normalize the image first");
  add_config_flags(tr, o);
  add_som_flags(tr, o);

  auto* sc = app.add_subcommand("score", "QE of images against a saved grid");
  sc->add_option("--grid-file", grid_path, "grid file written by train")->required();
  sc->add_option("--manifest", manifest, "manifest file");
  sc->add_option("images", images, "images to score");
  sc->add_flag("--normalize", normalize, "contrast-normalize each image first");
  sc->add_option("--year-fix", o.year_fix, "as-printed|relabel-1990");
  add_config_flags(sc, o);

  auto* st = app.add_subcommand("stats", "linear trend fits of covariate columns or a QE csv");
  st->add_option("--covariates", covariates, "covariate CSV (year,<name>...)");
  st->add_option("--qe", qe, "QE csv from score/run");
  st->add_option("--year-fix", o.year_fix, "as-printed|relabel-1990");
  st->add_option("--out", o.out, "write the CSV rows here too");

  auto* co = app.add_subcommand("correlate", "Pearson correlation of a QE csv with covariates");
  co->add_option("--qe", qe, "QE csv from score/run")->required();
  co->add_option("--covariates", covariates, "covariate CSV")->required();
  co->add_option("--year-fix", o.year_fix, "as-printed|relabel-1990");
  co->add_option("--out", o.out, "write the CSV rows here too");

  auto* run = app.add_subcommand("run", "full pipeline: register, normalize, train, score, fit");
  run->add_option("--manifest", manifest, "manifest file")->required();
  run->add_option("--covariates", covariates, "covariate CSV to correlate with");
  run->add_option("--year-fix", o.year_fix, "as-printed|relabel-1990");
  add_config_flags(run, o);
  add_som_flags(run, o);
  add_preprocess_flags(run, o);

  auto* pl = app.add_subcommand("plot", "SVG plots from a QE csv");
  pl->add_option("--qe", qe, "QE csv from score/run")->required();
  pl->add_option("--covariates", covariates, "covariate CSV");
  pl->add_option("--year-fix", o.year_fix, "as-printed|relabel-1990");
  add_config_flags(pl, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    return report_failure(ErrorCode::InvalidArgument, "cli", std::nullopt, e.what());
  }

  const std::string stage = app.get_subcommands().front()->get_name();
  try {
    if (*reg) return cmd_register(manifest, o);
    if (*tr) return cmd_train(image, search, normalize, o);
    if (*sc) return cmd_score(grid_path, manifest, images, normalize, o);
    if (*st) return cmd_stats(covariates, qe, o);
    if (*co) return cmd_correlate(qe, covariates, o);
    if (*run) return cmd_run(manifest, covariates, o);
    if (*pl) return cmd_plot(qe, covariates, o);
  } catch (const StageError& e) {
    return report_failure(e.code(), e.stage(), e.index(), e.what());
  } catch (const RegistrationError& e) {
    return report_failure(e.code(), stage, e.image_index(), e.what());
  } catch (const Error& e) {
    return report_failure(e.code(), stage, std::nullopt, e.what());
  } catch (const std::exception& e) {
    return report_failure(ErrorCode::Io, stage, std::nullopt, e.what());
  }
  return 1;
}
