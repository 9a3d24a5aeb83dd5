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

#include "somqe/grid_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "somqe/error.hpp"
#include "somqe/report.hpp"
#include "somqe/series_io.hpp"

namespace somqe {

std::string format_grid(const SomGrid& grid) {
  std::string out = "somqe-grid v1 " + std::to_string(grid.width()) + " " +
                    std::to_string(grid.height()) + "\n";
  char line[96];
  for (const auto& m : grid.models()) {
    std::snprintf(line, sizeof(line), "%.17g %.17g %.17g\n", m.c[0], m.c[1], m.c[2]);
    out += line;
  }
  return out;
}

SomGrid parse_grid(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) throw Error(ErrorCode::Parse, "grid file is empty");
  std::istringstream hs(header);
  std::string magic, version;
  int width = 0, height = 0;
  if (!(hs >> magic >> version >> width >> height) || magic != "somqe-grid") {
    throw Error(ErrorCode::Parse, "grid header must read 'somqe-grid v1 <width> <height>'");
  }
  if (version != "v1") throw Error(ErrorCode::Parse, "unsupported grid version " + version);
  if (width < 1 || height < 1) throw Error(ErrorCode::Parse, "grid dimensions must be positive");

  std::vector<PixelVector> models;
  std::string line;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    std::istringstream ls(line);
    std::string fields[3];
    PixelVector m;
    for (int k = 0; k < 3; ++k) {
      if (!(ls >> fields[k])) {
        throw Error(ErrorCode::Parse, "grid line " + std::to_string(line_no) + ": expected 3 values");
      }
      const auto value = parse_number(fields[k]);
      if (!value) {
        throw Error(ErrorCode::Parse, "grid line " + std::to_string(line_no) + ": bad number '" +
                                          fields[k] + "'");
      }
      m.c[k] = *value;
    }
    models.push_back(m);
  }
  return SomGrid(width, height, std::move(models));
}

SomGrid parse_grid(const std::string& text) {
  std::istringstream in(text);
  return parse_grid(in);
}

void save_grid(const SomGrid& grid, const std::filesystem::path& path) {
  write_file_atomic(path, format_grid(grid));
}

SomGrid load_grid(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  return parse_grid(in);
}

}  // namespace somqe
