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

#include <stdexcept>
#include <string>
#include <string_view>

namespace somqe {

enum class ErrorCode {
  InvalidArgument,
  EmptyImage,
  DimensionMismatch,
  MalformedHeader,
  TruncatedPayload,
  UnsupportedFormat,
  UnsupportedBitDepth,
  Io,
  Parse,
  TooFewPoints,
  DegenerateX,
  LengthMismatch,
  ZeroVariance,
  NonConvergence,
};

std::string_view to_string(ErrorCode code);

// Input errors map to CLI exit code 1, computation errors to 2.
bool is_computation_error(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace somqe
