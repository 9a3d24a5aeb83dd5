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

// Writes small image stacks and manifests for the CLI tests.
//   aligned/  five frames with a growing bright block; registration converges
//   salt/     frames with scattered saturated pixels; registration does not converge

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <random>
#include <string>

#include "somqe/image_io.hpp"
#include "somqe/report.hpp"
#include "test_helpers.hpp"

using namespace somqe;

int main(int argc, char** argv) {
  if (argc != 2) {
    std::fprintf(stderr, "usage: make_fixture <dir>\n");
    return 1;
  }
  const std::filesystem::path root = argv[1];
  std::filesystem::create_directories(root / "aligned");
  std::filesystem::create_directories(root / "salt");

  std::string manifest = "# roi: Fixture\n# anchor: 0\n";
  std::string covariates = "year,population\n";
  for (int k = 0; k < 5; ++k) {
    auto img = testing::smooth_image(64, 64);
    for (int y = 64 - 4 * k; y < 64; ++y) {
      for (int x = 64 - 4 * k; x < 64; ++x) {
        for (int c = 0; c < 3; ++c) img.at(x, y, c) = 250;
      }
    }
    const auto name = "f" + std::to_string(k) + ".ppm";
    save_image(img, root / "aligned" / name);
    manifest += name + "\t" + std::to_string(2000 + k) + "\t" + std::to_string(2000 + k) + "\n";
    covariates += std::to_string(2000 + k) + ",\"" + std::to_string(10 + k * k) + ",5\"\n";
  }
  write_file_atomic(root / "aligned" / "stack.tsv", manifest);
  write_file_atomic(root / "aligned" / "covariates.csv", covariates);

  std::vector<std::size_t> order(64 * 64);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::mt19937_64 rng(3);
  std::shuffle(order.begin(), order.end(), rng);
  manifest = "# anchor: 0\n";
  for (int k = 0; k < 3; ++k) {
    auto img = testing::smooth_image(64, 64);
    for (std::size_t i = 0; i < order.size() * static_cast<std::size_t>(k) / 20; ++i) {
      img.set_pixel(order[i], {250, 250, 250});
    }
    const auto name = "s" + std::to_string(k) + ".ppm";
    save_image(img, root / "salt" / name);
    manifest += name + "\t" + std::to_string(2000 + k) + "\t" + std::to_string(2000 + k) + "\n";
  }
  write_file_atomic(root / "salt" / "stack.tsv", manifest);
  return 0;
}
