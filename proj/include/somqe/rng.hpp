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

#include <cstdint>

namespace somqe {

/// SplitMix64 (Steele, Lea & Flood 2014), reference constants.
///
///   state += 0x9E3779B97F4A7C15
///   z = state
///   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
///   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
///   return z ^ (z >> 31)
///
/// Uniform integers in [0, n) are taken as the high 64 bits of the 128-bit
/// product next() * n. Both rules are part of the reproducibility contract:
/// any reimplementation that follows them draws the same sequence.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  std::uint64_t next() noexcept {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t uniform_index(std::uint64_t n) noexcept {
    __extension__ using u128 = unsigned __int128;
    return static_cast<std::uint64_t>((static_cast<u128>(next()) * n) >> 64);
  }

 private:
  std::uint64_t state_;
};

enum class Stream : std::uint64_t {
  Initialization = 0,
  Training = 1,
};

/// Seed of a named sub-stream: the run seed for initialization, the run seed
/// XOR 0xA0761D6478BD642F for training samples.
std::uint64_t stream_seed(std::uint64_t seed, Stream stream) noexcept;

inline SplitMix64 make_stream(std::uint64_t seed, Stream stream) noexcept {
  return SplitMix64(stream_seed(seed, stream));
}

}  // namespace somqe
