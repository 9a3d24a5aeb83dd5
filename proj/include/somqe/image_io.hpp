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
#include <span>
#include <string>

#include "somqe/raster.hpp"

namespace somqe {

/// Reads binary PPM (P6, maxval 255) or 8-bit PNG, detected by magic bytes.
/// PNG alpha is dropped, grayscale is expanded to RGB and palettes are
/// resolved.
RasterImage load_image(const std::filesystem::path& path);

RasterImage decode_ppm(std::span<const std::uint8_t> bytes);
RasterImage decode_png(std::span<const std::uint8_t> bytes);

/// Writes "P6\n<w> <h>\n255\n" followed by the raw RGB bytes.
void save_image(const RasterImage& image, const std::filesystem::path& path);

std::string encode_ppm(const RasterImage& image);

}  // namespace somqe
