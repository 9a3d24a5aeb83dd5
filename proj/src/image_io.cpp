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

#include "somqe/image_io.hpp"

#include <png.h>

#include <cctype>
#include <csetjmp>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iterator>
#include <vector>

#include "somqe/error.hpp"

namespace somqe {
namespace {

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

class HeaderReader {
 public:
  explicit HeaderReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  // Skips whitespace and '#' comments, then reads one unsigned decimal token.
  long next_number() {
    skip_space_and_comments();
    if (pos_ >= bytes_.size() || !std::isdigit(bytes_[pos_])) {
      throw Error(ErrorCode::MalformedHeader, "malformed header: expected a number");
    }
    long value = 0;
    while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
      value = value * 10 + (bytes_[pos_] - '0');
      if (value > 1'000'000'000L) {
        throw Error(ErrorCode::MalformedHeader, "malformed header: number out of range");
      }
      ++pos_;
    }
    return value;
  }

  // Exactly one whitespace byte separates maxval from the raster.
  std::size_t payload_offset() {
    if (pos_ >= bytes_.size() || !std::isspace(bytes_[pos_])) {
      throw Error(ErrorCode::MalformedHeader, "malformed header: missing separator");
    }
    return pos_ + 1;
  }

 private:
  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      if (std::isspace(bytes_[pos_])) {
        ++pos_;
      } else if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 2;
};

struct PngReadState {
  const std::uint8_t* bytes;
  std::size_t size;
  std::size_t pos;
  char message[256];
};

void png_read_from_span(png_structp png, png_bytep out, png_size_t count) {
  auto* state = static_cast<PngReadState*>(png_get_io_ptr(png));
  if (state->pos + count > state->size) {
    png_error(png, "truncated payload");
  }
  std::memcpy(out, state->bytes + state->pos, count);
  state->pos += count;
}

void png_error_handler(png_structp png, png_const_charp message) {
  auto* state = static_cast<PngReadState*>(png_get_error_ptr(png));
  std::snprintf(state->message, sizeof(state->message), "%s", message);
  png_longjmp(png, 1);
}

void png_warning_handler(png_structp, png_const_charp) {}

// The two libpng phases below keep only trivially destructible locals between
// setjmp and any longjmp out of libpng.
bool png_read_header(png_structp png, png_infop info, png_uint_32* width,
                     png_uint_32* height, int* bit_depth) {
  if (setjmp(png_jmpbuf(png))) return false;
  png_read_info(png, info);
  *width = png_get_image_width(png, info);
  *height = png_get_image_height(png, info);
  *bit_depth = png_get_bit_depth(png, info);
  const int color_type = png_get_color_type(png, info);
  if (*bit_depth == 16) return true;
  if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
  if (color_type == PNG_COLOR_TYPE_GRAY && *bit_depth < 8) png_set_expand_gray_1_2_4_to_8(png);
  if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
  if (color_type == PNG_COLOR_TYPE_GRAY || color_type == PNG_COLOR_TYPE_GRAY_ALPHA) {
    png_set_gray_to_rgb(png);
  }
  png_set_strip_alpha(png);
  png_set_interlace_handling(png);
  png_read_update_info(png, info);
  return true;
}

bool png_read_rows(png_structp png, png_bytepp rows) {
  if (setjmp(png_jmpbuf(png))) return false;
  png_read_image(png, rows);
  return true;
}

}  // namespace

RasterImage decode_ppm(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P') {
    throw Error(ErrorCode::MalformedHeader, "malformed header: not a PPM file");
  }
  if (bytes[1] != '6') {
    throw Error(ErrorCode::UnsupportedFormat,
                std::string("unsupported PPM variant P") + static_cast<char>(bytes[1]));
  }
  HeaderReader header(bytes);
  const long width = header.next_number();
  const long height = header.next_number();
  const long maxval = header.next_number();
  if (width <= 0 || height <= 0) {
    throw Error(ErrorCode::MalformedHeader, "malformed header: zero dimension");
  }
  if (maxval != 255) {
    throw Error(ErrorCode::UnsupportedBitDepth,
                "unsupported bit depth: maxval " + std::to_string(maxval));
  }
  const std::size_t offset = header.payload_offset();
  const std::size_t expected = 3 * static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  if (bytes.size() - offset < expected) {
    throw Error(ErrorCode::TruncatedPayload,
                "truncated payload: " + std::to_string(bytes.size() - offset) + " of " +
                    std::to_string(expected) + " bytes");
  }
  std::vector<std::uint8_t> data(bytes.begin() + static_cast<std::ptrdiff_t>(offset),
                                 bytes.begin() + static_cast<std::ptrdiff_t>(offset + expected));
  return RasterImage(static_cast<int>(width), static_cast<int>(height), std::move(data));
}

RasterImage decode_png(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 8 || png_sig_cmp(bytes.data(), 0, 8) != 0) {
    throw Error(ErrorCode::MalformedHeader, "malformed header: not a PNG file");
  }
  PngReadState state{bytes.data(), bytes.size(), 0, {}};
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, &state,
                                           png_error_handler, png_warning_handler);
  if (png == nullptr) throw Error(ErrorCode::Io, "png: out of memory");
  png_infop info = png_create_info_struct(png);
  if (info == nullptr) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    throw Error(ErrorCode::Io, "png: out of memory");
  }
  png_set_read_fn(png, &state, png_read_from_span);

  auto fail = [&](ErrorCode code, const std::string& message) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw Error(code, message);
  };

  png_uint_32 width = 0;
  png_uint_32 height = 0;
  int bit_depth = 0;
  if (!png_read_header(png, info, &width, &height, &bit_depth)) {
    const bool truncated = std::strstr(state.message, "truncated") != nullptr;
    fail(truncated ? ErrorCode::TruncatedPayload : ErrorCode::MalformedHeader,
         std::string("png: ") + state.message);
  }
  if (bit_depth == 16) fail(ErrorCode::UnsupportedBitDepth, "unsupported bit depth: 16-bit PNG");
  if (png_get_rowbytes(png, info) != 3 * static_cast<std::size_t>(width)) {
    fail(ErrorCode::UnsupportedFormat, "png: unexpected row layout");
  }

  std::vector<std::uint8_t> data(3 * static_cast<std::size_t>(width) * height);
  std::vector<png_bytep> rows(height);
  for (png_uint_32 y = 0; y < height; ++y) {
    rows[y] = data.data() + 3 * static_cast<std::size_t>(width) * y;
  }
  if (!png_read_rows(png, rows.data())) {
    fail(ErrorCode::TruncatedPayload, std::string("truncated payload: png: ") + state.message);
  }
  png_destroy_read_struct(&png, &info, nullptr);
  return RasterImage(static_cast<int>(width), static_cast<int>(height), std::move(data));
}

RasterImage load_image(const std::filesystem::path& path) {
  const auto bytes = read_file(path);
  if (bytes.size() >= 8 && png_sig_cmp(bytes.data(), 0, 8) == 0) {
    return decode_png(bytes);
  }
  return decode_ppm(bytes);
}

std::string encode_ppm(const RasterImage& image) {
  std::string out = "P6\n" + std::to_string(image.width()) + " " +
                    std::to_string(image.height()) + "\n255\n";
  const auto data = image.data();
  out.append(reinterpret_cast<const char*>(data.data()), data.size());
  return out;
}

void save_image(const RasterImage& image, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
  const std::string bytes = encode_ppm(image);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::Io, "write failed for " + path.string());
}

}  // namespace somqe
