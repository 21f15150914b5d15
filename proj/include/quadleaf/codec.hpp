/*
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
 */

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "quadleaf/image.hpp"

namespace quadleaf {

enum class ImageFormat { ppm, png };

/// Decodes a binary PPM (P6, 8-bit) or PNG byte stream at its native
/// resolution; pixels are never resampled or filtered.
///
/// Throws DecodeError on malformed or truncated data and
/// UnsupportedFormat on valid-but-unhandled variants (ASCII PPM,
/// 16-bit samples).
PixelImage decode_image(std::span<const std::uint8_t> bytes, ImageFormat format);

/// Decodes by sniffing the magic bytes (P6 or the PNG signature).
PixelImage decode_auto(std::span<const std::uint8_t> bytes);

std::vector<std::uint8_t> encode_ppm(const PixelImage& img);
std::vector<std::uint8_t> encode_png(const PixelImage& img);

/// File helpers; format chosen by extension (.ppm / .png) for writing
/// and by content for reading. Throw IoError on filesystem failures.
PixelImage load_image(const std::string& path);
void save_image(const PixelImage& img, const std::string& path);

std::vector<std::uint8_t> read_file(const std::string& path);
void write_file(const std::string& path, std::span<const std::uint8_t> bytes);

} // namespace quadleaf
