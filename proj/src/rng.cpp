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

#include "somqe/rng.hpp"

namespace somqe {

std::uint64_t stream_seed(std::uint64_t seed, Stream stream) noexcept {
  switch (stream) {
    case Stream::Initialization: return seed;
    case Stream::Training: return seed ^ 0xA0761D6478BD642FULL;
  }
  return seed;
}

}  // namespace somqe
