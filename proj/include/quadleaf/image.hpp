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
#include <vector>

#include "quadleaf/errors.hpp"

namespace quadleaf {

struct Rgb {
    std::uint8_t r = 0;
    std::uint8_t g = 0;
    std::uint8_t b = 0;

    bool operator==(const Rgb&) const = default;
};

/// One pixel in HSV space: h in degrees [0, 360), s and v in [0, 1].
/// Achromatic pixels (s == 0) carry h == 0.
struct HsvPixel {
    float h = 0.0f;
    float s = 0.0f;
    float v = 0.0f;
};

/// Owned 2-D RGB raster, 8 bits per channel, row-major.
///
/// Pixel (x, y) lives at data[(y * width + x) * 3]; x grows rightward,
/// y downward, origin at the top-left corner.
class PixelImage {
public:
    PixelImage() = default;
    PixelImage(int width, int height);
    PixelImage(int width, int height, std::vector<std::uint8_t> data);

    int width() const { return width_; }
    int height() const { return height_; }
    std::int64_t pixel_count() const { return std::int64_t(width_) * height_; }
    bool empty() const { return width_ == 0 || height_ == 0; }

    const std::vector<std::uint8_t>& data() const { return data_; }
    std::vector<std::uint8_t>& data() { return data_; }

    Rgb at(int x, int y) const {
        const std::size_t i = index(x, y);
        return {data_[i], data_[i + 1], data_[i + 2]};
    }

    void set(int x, int y, Rgb px) {
        const std::size_t i = index(x, y);
        data_[i] = px.r;
        data_[i + 1] = px.g;
        data_[i + 2] = px.b;
    }

    void fill(Rgb px);

    bool operator==(const PixelImage&) const = default;

private:
    std::size_t index(int x, int y) const {
        return (std::size_t(y) * width_ + x) * 3;
    }

    int width_ = 0;
    int height_ = 0;
    std::vector<std::uint8_t> data_;
};

/// Precomputed HSV plane matching a PixelImage, three floats per pixel.
class HsvImage {
public:
    HsvImage() = default;
    HsvImage(int width, int height);

    int width() const { return width_; }
    int height() const { return height_; }

    HsvPixel at(int x, int y) const {
        const std::size_t i = (std::size_t(y) * width_ + x) * 3;
        return {data_[i], data_[i + 1], data_[i + 2]};
    }

    void set(int x, int y, HsvPixel px) {
        const std::size_t i = (std::size_t(y) * width_ + x) * 3;
        data_[i] = px.h;
        data_[i + 1] = px.s;
        data_[i + 2] = px.v;
    }

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<float> data_;
};

/// Standard RGB -> HSV conversion (h = 0 for achromatic input).
HsvPixel rgb_to_hsv(std::uint8_t r, std::uint8_t g, std::uint8_t b);

inline HsvPixel rgb_to_hsv(Rgb px) { return rgb_to_hsv(px.r, px.g, px.b); }

/// Inverse conversion; reproduces the source RGB within +/-1 per channel.
Rgb hsv_to_rgb(double h, double s, double v);

} // namespace quadleaf
