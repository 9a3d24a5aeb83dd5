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
#include <iosfwd>
#include <string>

#include "somqe/som.hpp"

namespace somqe {

// Text format:
//   somqe-grid v1 <width> <height>
//   <r> <g> <b>            one line per model, row-major, %.17g
std::string format_grid(const SomGrid& grid);
SomGrid parse_grid(std::istream& in);
SomGrid parse_grid(const std::string& text);

void save_grid(const SomGrid& grid, const std::filesystem::path& path);
SomGrid load_grid(const std::filesystem::path& path);

}  // namespace somqe
