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

#include <csetjmp>
#include <cstring>
#include <png.h>

#include "quadleaf/codec.hpp"

namespace quadleaf {

namespace {

struct ReadCursor {
    std::span<const std::uint8_t> bytes;
    std::size_t pos = 0;
};

// libpng reports errors through longjmp; keep everything that owns a
// destructor outside the setjmp scope.
void read_callback(png_structp png, png_bytep out, png_size_t count) {
    auto* cur = static_cast<ReadCursor*>(png_get_io_ptr(png));
    if (cur->pos + count > cur->bytes.size())
        png_error(png, "unexpected end of PNG data");
    std::memcpy(out, cur->bytes.data() + cur->pos, count);
    cur->pos += count;
}

void write_callback(png_structp png, png_bytep data, png_size_t count) {
    auto* out = static_cast<std::vector<std::uint8_t>*>(png_get_io_ptr(png));
    out->insert(out->end(), data, data + count);
}

void flush_callback(png_structp) {}

struct ReadHandles {
    png_structp png = nullptr;
    png_infop info = nullptr;
    ~ReadHandles() { png_destroy_read_struct(&png, &info, nullptr); }
};

struct WriteHandles {
    png_structp png = nullptr;
    png_infop info = nullptr;
    ~WriteHandles() { png_destroy_write_struct(&png, &info); }
};

} // namespace

PixelImage decode_png(std::span<const std::uint8_t> bytes) {
    ReadHandles h;
    h.png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!h.png)
        throw DecodeError("PNG: failed to allocate read struct");
    h.info = png_create_info_struct(h.png);
    if (!h.info)
        throw DecodeError("PNG: failed to allocate info struct");

    ReadCursor cursor{bytes};
    png_uint_32 width = 0, height = 0;
    int bit_depth = 0, color_type = 0;
    std::vector<std::uint8_t> data;
    std::vector<png_bytep> rows;

    if (setjmp(png_jmpbuf(h.png)))
        throw DecodeError("PNG: corrupt or truncated stream");

    png_set_read_fn(h.png, &cursor, read_callback);
    png_read_info(h.png, h.info);
    png_get_IHDR(h.png, h.info, &width, &height, &bit_depth, &color_type,
                 nullptr, nullptr, nullptr);

    if (bit_depth == 16)
        throw UnsupportedFormat("PNG: 16-bit channels are not supported");

    // Normalize every color type to 8-bit RGB.
    if (color_type == PNG_COLOR_TYPE_PALETTE)
        png_set_palette_to_rgb(h.png);
    if (color_type == PNG_COLOR_TYPE_GRAY && bit_depth < 8)
        png_set_expand_gray_1_2_4_to_8(h.png);
    if (png_get_valid(h.png, h.info, PNG_INFO_tRNS))
        png_set_tRNS_to_alpha(h.png);
    if (color_type == PNG_COLOR_TYPE_GRAY || color_type == PNG_COLOR_TYPE_GRAY_ALPHA)
        png_set_gray_to_rgb(h.png);
    png_set_strip_alpha(h.png);
    png_read_update_info(h.png, h.info);

    if (png_get_channels(h.png, h.info) != 3)
        throw UnsupportedFormat("PNG: could not normalize to RGB");
    if (width < 1 || height < 1 || width > (1u << 20) || height > (1u << 20))
        throw DecodeError("PNG: unreasonable dimensions");

    data.resize(std::size_t(width) * height * 3);
    rows.resize(height);
    for (png_uint_32 y = 0; y < height; ++y)
        rows[y] = data.data() + std::size_t(y) * width * 3;
    png_read_image(h.png, rows.data());
    png_read_end(h.png, nullptr);

    return PixelImage(int(width), int(height), std::move(data));
}

std::vector<std::uint8_t> encode_png(const PixelImage& img) {
    WriteHandles h;
    h.png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!h.png)
        throw IoError("PNG: failed to allocate write struct");
    h.info = png_create_info_struct(h.png);
    if (!h.info)
        throw IoError("PNG: failed to allocate info struct");

    std::vector<std::uint8_t> out;
    std::vector<png_bytep> rows(img.height());
    const std::uint8_t* base = img.data().data();
    for (int y = 0; y < img.height(); ++y)
        rows[y] = const_cast<png_bytep>(base + std::size_t(y) * img.width() * 3);

    if (setjmp(png_jmpbuf(h.png)))
        throw IoError("PNG: encode failed");

    png_set_write_fn(h.png, &out, write_callback, flush_callback);
    png_set_IHDR(h.png, h.info, png_uint_32(img.width()), png_uint_32(img.height()),
                 8, PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE,
                 PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(h.png, h.info);
    png_write_image(h.png, rows.data());
    png_write_end(h.png, nullptr);
    return out;
}

} // namespace quadleaf
