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

#include "somqe/som.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "somqe/error.hpp"
#include "somqe/kernels.hpp"
#include "somqe/rng.hpp"
#include "somqe/summation.hpp"

namespace somqe {

SomGrid::SomGrid(int width, int height, std::vector<PixelVector> models)
    : width_(width), height_(height), models_(std::move(models)) {
  if (width < 1 || height < 1) {
    throw Error(ErrorCode::InvalidArgument, "grid dimensions must be positive");
  }
  if (models_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
    throw Error(ErrorCode::InvalidArgument,
                "grid holds " + std::to_string(models_.size()) + " models, expected " +
                    std::to_string(width * height));
  }
  for (const auto& m : models_) {
    if (!m.in_unit_cube()) {
      throw Error(ErrorCode::InvalidArgument, "model component outside [0,1]");
    }
  }
}

void TrainingParams::validate() const {
  if (!(learning_rate >= 0.0 && learning_rate <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "learning rate must lie in [0,1]");
  }
  if (!(neighborhood_radius >= 0.0) || !std::isfinite(neighborhood_radius)) {
    throw Error(ErrorCode::InvalidArgument, "neighborhood radius must be finite and >= 0");
  }
  if (iterations < 1) {
    throw Error(ErrorCode::InvalidArgument, "iterations must be >= 1");
  }
}

double TrainingParams::alpha_at(int t) const noexcept {
  if (decay == DecayMode::Constant) return learning_rate;
  return learning_rate * (1.0 - static_cast<double>(t) / iterations);
}

double TrainingParams::radius_at(int t) const noexcept {
  if (decay == DecayMode::Constant) return neighborhood_radius;
  return neighborhood_radius * (1.0 - static_cast<double>(t) / iterations);
}

std::vector<PixelVector> pixel_vectors(const RasterImage& image) {
  std::vector<PixelVector> out(image.pixel_count());
  const auto data = image.data();
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = PixelVector::from_rgb8(data[3 * i], data[3 * i + 1], data[3 * i + 2]);
  }
  return out;
}

SomGrid initialize_grid(const RasterImage& image, int width, int height, std::uint64_t seed) {
  if (image.empty()) throw Error(ErrorCode::EmptyImage, "empty training image");
  if (width < 1 || height < 1) {
    throw Error(ErrorCode::InvalidArgument, "grid dimensions must be positive");
  }
  auto rng = make_stream(seed, Stream::Initialization);
  std::vector<PixelVector> models(static_cast<std::size_t>(width) * static_cast<std::size_t>(height));
  for (auto& m : models) {
    const auto rgb = image.pixel(rng.uniform_index(image.pixel_count()));
    m = PixelVector::from_rgb8(rgb[0], rgb[1], rgb[2]);
  }
  return SomGrid(width, height, std::move(models));
}

Bmu best_matching_unit(const PixelVector& x, const SomGrid& grid) noexcept {
  const auto models = grid.models();
  double best = squared_distance(x, models[0]);
  std::size_t best_index = 0;
  for (std::size_t m = 1; m < models.size(); ++m) {
    const double d = squared_distance(x, models[m]);
    if (d < best) {
      best = d;
      best_index = m;
    }
  }
  return {best_index, std::sqrt(best)};
}

SomGrid train_step(SomGrid grid, const PixelVector& x, double alpha, double radius) {
  if (alpha == 0.0) return grid;
  const auto winner = best_matching_unit(x, grid);
  const GridCoord wc = grid.coord(winner.index);
  const double radius2 = radius * radius;
  for (std::size_t i = 0; i < grid.model_count(); ++i) {
    const GridCoord c = grid.coord(i);
    const double dr = c.row - wc.row;
    const double dc = c.col - wc.col;
    if (dr * dr + dc * dc > radius2) continue;
    auto& m = grid.model(i);
    for (int k = 0; k < 3; ++k) {
      m.c[k] = std::clamp(m.c[k] + alpha * (x.c[k] - m.c[k]), 0.0, 1.0);
    }
  }
  return grid;
}

SomGrid train(SomGrid grid, std::span<const PixelVector> pixels, const TrainingParams& params) {
  params.validate();
  if (pixels.empty()) throw Error(ErrorCode::EmptyImage, "empty training image");
  auto rng = make_stream(params.seed, Stream::Training);
  for (int t = 0; t < params.iterations; ++t) {
    const auto& x = pixels[rng.uniform_index(pixels.size())];
    grid = train_step(std::move(grid), x, params.alpha_at(t), params.radius_at(t));
  }
  return grid;
}

SomGrid train(SomGrid grid, const RasterImage& image, const TrainingParams& params) {
  if (image.empty()) throw Error(ErrorCode::EmptyImage, "empty training image");
  const auto pixels = pixel_vectors(image);
  return train(std::move(grid), pixels, params);
}

namespace {

template <typename Scan>
QeResult reduce_qe(std::span<const PixelVector> pixels, const SomGrid& grid, Scan scan) {
  if (pixels.empty()) throw Error(ErrorCode::EmptyImage, "empty image");
  std::vector<double> distances(pixels.size());
  std::vector<std::int32_t> winners(pixels.size());
  scan(pixels, grid.models(), std::span<double>(distances), std::span<std::int32_t>(winners));

  QeResult result;
  result.pixel_count = pixels.size();
  result.assignment_counts.assign(grid.model_count(), 0);
  for (auto w : winners) ++result.assignment_counts[static_cast<std::size_t>(w)];
  result.qe = pairwise_sum(distances) / static_cast<double>(pixels.size());
  return result;
}

}  // namespace

QeResult quantization_error(std::span<const PixelVector> pixels, const SomGrid& grid) {
  return reduce_qe(pixels, grid, kernels::omp::bmu_scan);
}

QeResult quantization_error_serial(std::span<const PixelVector> pixels, const SomGrid& grid) {
  return reduce_qe(pixels, grid, kernels::serial::bmu_scan);
}

QeResult quantization_error(const RasterImage& image, const SomGrid& grid) {
  if (image.empty()) throw Error(ErrorCode::EmptyImage, "empty image");
  const auto pixels = pixel_vectors(image);
  return quantization_error(pixels, grid);
}

std::size_t empty_model_count(const QeResult& result) noexcept {
  return static_cast<std::size_t>(
      std::count(result.assignment_counts.begin(), result.assignment_counts.end(), 0u));
}

MapSizeReport map_size_search(const RasterImage& image, std::span<const GridSize> candidates,
                              const TrainingParams& params) {
  if (candidates.empty()) {
    throw Error(ErrorCode::InvalidArgument, "map size search needs at least one candidate");
  }
  if (image.empty()) throw Error(ErrorCode::EmptyImage, "empty training image");
  const auto pixels = pixel_vectors(image);

  MapSizeReport report;
  for (const auto& size : candidates) {
    auto grid = initialize_grid(image, size.width, size.height, params.seed);
    grid = train(std::move(grid), pixels, params);
    const auto qe = quantization_error(pixels, grid);
    report.entries.push_back({size, qe.qe, empty_model_count(qe)});
  }

  const MapSizeEntry* best = nullptr;
  for (const auto& e : report.entries) {
    if (e.empty_models != 0) continue;
    if (best == nullptr || e.size.model_count() > best->size.model_count() ||
        (e.size.model_count() == best->size.model_count() && e.qe < best->qe)) {
      best = &e;
    }
  }
  if (best == nullptr) {
    report.all_candidates_have_empty_models = true;
    for (const auto& e : report.entries) {
      if (best == nullptr || e.empty_models < best->empty_models ||
          (e.empty_models == best->empty_models && e.qe < best->qe)) {
        best = &e;
      }
    }
  }
  report.chosen = best->size;
  return report;
}

}  // namespace somqe
