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

#include "quadleaf/image.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace quadleaf {

PixelImage::PixelImage(int width, int height)
    : width_(width), height_(height) {
    if (width < 1 || height < 1)
        throw BoundsError("image dimensions must be >= 1, got " +
                          std::to_string(width) + "x" + std::to_string(height));
    data_.assign(std::size_t(width) * height * 3, 0);
}

PixelImage::PixelImage(int width, int height, std::vector<std::uint8_t> data)
    : width_(width), height_(height), data_(std::move(data)) {
    if (width < 1 || height < 1)
        throw BoundsError("image dimensions must be >= 1, got " +
                          std::to_string(width) + "x" + std::to_string(height));
    if (data_.size() != std::size_t(width) * height * 3)
        throw BoundsError("pixel buffer size " + std::to_string(data_.size()) +
                          " does not match " + std::to_string(width) + "x" +
                          std::to_string(height) + " RGB image");
}

void PixelImage::fill(Rgb px) {
    for (std::size_t i = 0; i + 2 < data_.size(); i += 3) {
        data_[i] = px.r;
        data_[i + 1] = px.g;
        data_[i + 2] = px.b;
    }
}

HsvImage::HsvImage(int width, int height)
    : width_(width), height_(height),
      data_(std::size_t(width) * height * 3, 0.0f) {}

HsvPixel rgb_to_hsv(std::uint8_t r, std::uint8_t g, std::uint8_t b) {
    const double rf = r / 255.0;
    const double gf = g / 255.0;
    const double bf = b / 255.0;
    const double maxc = std::max({rf, gf, bf});
    const double minc = std::min({rf, gf, bf});
    const double delta = maxc - minc;

    const double v = maxc;
    const double s = maxc <= 0.0 ? 0.0 : delta / maxc;

    double h = 0.0;
    if (delta > 0.0) {
        if (maxc == rf)
            h = 60.0 * ((gf - bf) / delta);
        else if (maxc == gf)
            h = 60.0 * ((bf - rf) / delta + 2.0);
        else
            h = 60.0 * ((rf - gf) / delta + 4.0);
        if (h < 0.0)
            h += 360.0;
        if (h >= 360.0)
            h = 0.0;
    }
    return {float(h), float(s), float(v)};
}

Rgb hsv_to_rgb(double h, double s, double v) {
    h = std::fmod(h, 360.0);
    if (h < 0.0)
        h += 360.0;
    const double c = v * s;
    const double hp = h / 60.0;
    const double x = c * (1.0 - std::fabs(std::fmod(hp, 2.0) - 1.0));

    double rf = 0.0, gf = 0.0, bf = 0.0;
    switch (int(hp)) {
    case 0: rf = c; gf = x; break;
    case 1: rf = x; gf = c; break;
    case 2: gf = c; bf = x; break;
    case 3: gf = x; bf = c; break;
    case 4: rf = x; bf = c; break;
    default: rf = c; bf = x; break;
    }
    const double m = v - c;
    auto to8 = [](double f) {
        return std::uint8_t(std::clamp(std::lround(f * 255.0), 0L, 255L));
    };
    return {to8(rf + m), to8(gf + m), to8(bf + m)};
}

} // namespace quadleaf
