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
#include <cstdint>
#include <span>
#include <vector>

#include "somqe/pixel.hpp"
#include "somqe/raster.hpp"

namespace somqe {

struct GridCoord {
  int row = 0;
  int col = 0;
};

struct GridSize {
  int width = 4;
  int height = 4;

  int model_count() const noexcept { return width * height; }
  bool operator==(const GridSize&) const = default;
};

/// Rectangular map of model vectors stored row-major; model i sits at
/// (row, col) = (i / width, i % width).
class SomGrid {
 public:
  SomGrid(int width, int height, std::vector<PixelVector> models);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  GridSize size() const noexcept { return {width_, height_}; }
  std::size_t model_count() const noexcept { return models_.size(); }

  std::span<const PixelVector> models() const noexcept { return models_; }
  const PixelVector& model(std::size_t i) const noexcept { return models_[i]; }
  PixelVector& model(std::size_t i) noexcept { return models_[i]; }

  GridCoord coord(std::size_t i) const noexcept {
    return {static_cast<int>(i) / width_, static_cast<int>(i) % width_};
  }

  bool operator==(const SomGrid&) const = default;

 private:
  int width_;
  int height_;
  std::vector<PixelVector> models_;
};

enum class DecayMode { Constant, LinearToZero };

struct TrainingParams {
  double learning_rate = 0.2;
  /// Bubble-kernel cutoff in grid-distance units.
  double neighborhood_radius = 1.2;
  int iterations = 1000;
  std::uint64_t seed = 0;
  DecayMode decay = DecayMode::Constant;

  /// Throws InvalidArgument unless learning_rate is in [0,1], radius >= 0 and
  /// iterations >= 1. A zero learning rate is accepted (it trains nothing).
  void validate() const;

  double alpha_at(int t) const noexcept;
  double radius_at(int t) const noexcept;
};

struct Bmu {
  std::size_t index = 0;
  double distance = 0.0;
};

struct QeResult {
  double qe = 0.0;
  std::size_t pixel_count = 0;
  std::vector<std::size_t> assignment_counts;
};

/// Image pixels scaled to [0,1], row-major.
std::vector<PixelVector> pixel_vectors(const RasterImage& image);

/// Draws width*height models uniformly with replacement from the image using
/// the initialization stream of `seed`.
SomGrid initialize_grid(const RasterImage& image, int width, int height, std::uint64_t seed);

/// Nearest model by Euclidean distance; ties go to the lowest row-major index.
Bmu best_matching_unit(const PixelVector& x, const SomGrid& grid) noexcept;

/// One presentation of x: the winner and every model whose grid distance to
/// the winner is <= radius move by alpha * (x - m), clamped to [0,1].
SomGrid train_step(SomGrid grid, const PixelVector& x, double alpha, double radius);

/// Sequential training: `iterations` presentations of pixels drawn uniformly
/// from the training stream of params.seed.
SomGrid train(SomGrid grid, std::span<const PixelVector> pixels, const TrainingParams& params);
SomGrid train(SomGrid grid, const RasterImage& image, const TrainingParams& params);

/// Mean BMU distance over all pixels. Distances are computed in parallel and
/// reduced by pairwise_sum in row-major order, so the value is independent of
/// the thread count.
QeResult quantization_error(std::span<const PixelVector> pixels, const SomGrid& grid);
QeResult quantization_error(const RasterImage& image, const SomGrid& grid);

/// Reference version built on the serial kernel.
QeResult quantization_error_serial(std::span<const PixelVector> pixels, const SomGrid& grid);

std::size_t empty_model_count(const QeResult& result) noexcept;

struct MapSizeEntry {
  GridSize size;
  double qe = 0.0;
  std::size_t empty_models = 0;
};

struct MapSizeReport {
  GridSize chosen;
  std::vector<MapSizeEntry> entries;
  // Set when no candidate trained without empty models.
  bool all_candidates_have_empty_models = false;
};

/// Trains one map per candidate and picks the largest one without empty
/// models (lowest QE among equal model counts). If every candidate leaves
/// models empty, the one with the fewest empties wins and the report is
/// flagged.
MapSizeReport map_size_search(const RasterImage& image, std::span<const GridSize> candidates,
                              const TrainingParams& params);

}  // namespace somqe
