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

#include <cctype>
#include <fstream>
#include <string>

#include "quadleaf/codec.hpp"

namespace quadleaf {

namespace {

// PPM header scanner: whitespace-separated tokens, '#' comments run to
// end of line.
struct HeaderScanner {
    std::span<const std::uint8_t> bytes;
    std::size_t pos = 0;

    void skip_space_and_comments() {
        while (pos < bytes.size()) {
            if (std::isspace(bytes[pos])) {
                ++pos;
            } else if (bytes[pos] == '#') {
                while (pos < bytes.size() && bytes[pos] != '\n')
                    ++pos;
            } else {
                break;
            }
        }
    }

    long next_int() {
        skip_space_and_comments();
        if (pos >= bytes.size() || !std::isdigit(bytes[pos]))
            throw DecodeError("PPM header: expected integer at offset " +
                              std::to_string(pos));
        long value = 0;
        while (pos < bytes.size() && std::isdigit(bytes[pos])) {
            value = value * 10 + (bytes[pos] - '0');
            if (value > 1L << 30)
                throw DecodeError("PPM header: integer out of range");
            ++pos;
        }
        return value;
    }
};

} // namespace

PixelImage decode_ppm(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < 2)
        throw DecodeError("PPM: file too short for a magic number");
    if (bytes[0] != 'P')
        throw DecodeError("PPM: missing P6 magic number");
    if (bytes[1] != '6') {
        if (bytes[1] == '3' || bytes[1] == '5' || bytes[1] == '2' || bytes[1] == '1')
            throw UnsupportedFormat("PPM: only binary P6 is supported");
        throw DecodeError("PPM: missing P6 magic number");
    }

    HeaderScanner scan{bytes, 2};
    const long width = scan.next_int();
    const long height = scan.next_int();
    const long maxval = scan.next_int();
    if (width < 1 || height < 1)
        throw DecodeError("PPM: non-positive dimensions");
    if (maxval != 255)
        throw UnsupportedFormat("PPM: only 8-bit (maxval 255) is supported, got " +
                                std::to_string(maxval));

    // Exactly one whitespace byte separates the header from the raster.
    if (scan.pos >= bytes.size() || !std::isspace(bytes[scan.pos]))
        throw DecodeError("PPM: missing separator after maxval");
    ++scan.pos;

    const std::size_t need = std::size_t(width) * height * 3;
    if (bytes.size() - scan.pos < need)
        throw DecodeError("PPM: truncated pixel data (need " +
                          std::to_string(need) + " bytes, have " +
                          std::to_string(bytes.size() - scan.pos) + ")");
    std::vector<std::uint8_t> data(bytes.begin() + scan.pos,
                                   bytes.begin() + scan.pos + need);
    return PixelImage(int(width), int(height), std::move(data));
}

std::vector<std::uint8_t> encode_ppm(const PixelImage& img) {
    const std::string header = "P6\n" + std::to_string(img.width()) + " " +
                               std::to_string(img.height()) + "\n255\n";
    std::vector<std::uint8_t> out(header.begin(), header.end());
    out.insert(out.end(), img.data().begin(), img.data().end());
    return out;
}

// defined in codec_png.cpp
PixelImage decode_png(std::span<const std::uint8_t> bytes);

PixelImage decode_image(std::span<const std::uint8_t> bytes, ImageFormat format) {
    switch (format) {
    case ImageFormat::ppm: return decode_ppm(bytes);
    case ImageFormat::png: return decode_png(bytes);
    }
    throw DecodeError("unknown image format");
}

PixelImage decode_auto(std::span<const std::uint8_t> bytes) {
    static const std::uint8_t png_sig[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};
    if (bytes.size() >= 8 && std::equal(png_sig, png_sig + 8, bytes.begin()))
        return decode_png(bytes);
    if (bytes.size() >= 2 && bytes[0] == 'P')
        return decode_ppm(bytes);
    throw DecodeError("unrecognized image data (neither P6 PPM nor PNG)");
}

std::vector<std::uint8_t> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open " + path);
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    if (in.bad())
        throw IoError("read failed for " + path);
    return bytes;
}

void write_file(const std::string& path, std::span<const std::uint8_t> bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw IoError("cannot create " + path);
    out.write(reinterpret_cast<const char*>(bytes.data()),
              std::streamsize(bytes.size()));
    if (!out)
        throw IoError("write failed for " + path);
}

PixelImage load_image(const std::string& path) {
    return decode_auto(read_file(path));
}

void save_image(const PixelImage& img, const std::string& path) {
    const bool ppm = path.size() >= 4 && path.substr(path.size() - 4) == ".ppm";
    write_file(path, ppm ? encode_ppm(img) : encode_png(img));
}

} // namespace quadleaf
