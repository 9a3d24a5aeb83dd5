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

#include "somqe/raster.hpp"

namespace somqe {

/// Per-channel contrast stretch I' = (I - I_min) / (I_max - I_min) * 255,
/// rounded half up. A constant channel maps to 0.
RasterImage normalize_contrast(const RasterImage& image);
RasterImage normalize_contrast_serial(const RasterImage& image);

}  // namespace somqe
