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

#include "somqe/error.hpp"

namespace somqe {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "invalid_argument";
    case ErrorCode::EmptyImage: return "empty_image";
    case ErrorCode::DimensionMismatch: return "dimension_mismatch";
    case ErrorCode::MalformedHeader: return "malformed_header";
    case ErrorCode::TruncatedPayload: return "truncated_payload";
    case ErrorCode::UnsupportedFormat: return "unsupported_format";
    case ErrorCode::UnsupportedBitDepth: return "unsupported_bit_depth";
    case ErrorCode::Io: return "io";
    case ErrorCode::Parse: return "parse";
    case ErrorCode::TooFewPoints: return "too_few_points";
    case ErrorCode::DegenerateX: return "degenerate_x";
    case ErrorCode::LengthMismatch: return "length_mismatch";
    case ErrorCode::ZeroVariance: return "zero_variance";
    case ErrorCode::NonConvergence: return "non_convergence";
  }
  return "unknown";
}

bool is_computation_error(ErrorCode code) {
  return code == ErrorCode::NonConvergence;
}

}  // namespace somqe
