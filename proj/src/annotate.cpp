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

#include <algorithm>
#include <array>

#include "quadleaf/annotate.hpp"

namespace quadleaf {

namespace {

constexpr std::array<Rgb, 8> kPalette = {{
    {230, 25, 75},   // red
    {255, 225, 25},  // yellow
    {0, 130, 200},   // blue
    {245, 130, 48},  // orange
    {145, 30, 180},  // purple
    {70, 240, 240},  // cyan
    {240, 50, 230},  // magenta
    {250, 190, 190}, // pink
}};

// Fills the intersection of [x1,x2)x[y1,y2) with the image.
void fill_rect(PixelImage& img, int x1, int y1, int x2, int y2, Rgb color) {
    x1 = std::max(x1, 0);
    y1 = std::max(y1, 0);
    x2 = std::min(x2, img.width());
    y2 = std::min(y2, img.height());
    for (int y = y1; y < y2; ++y)
        for (int x = x1; x < x2; ++x)
            img.set(x, y, color);
}

void outline(PixelImage& img, int x1, int y1, int x2, int y2, int thickness,
             Rgb color) {
    fill_rect(img, x1, y1, x2, y1 + thickness, color);
    fill_rect(img, x1, y2 - thickness, x2, y2, color);
    fill_rect(img, x1, y1, x1 + thickness, y2, color);
    fill_rect(img, x2 - thickness, y1, x2, y2, color);
}

} // namespace

Rgb label_color(std::size_t sorted_index) {
    return kPalette[sorted_index % kPalette.size()];
}

PixelImage annotate_report(const PixelImage& img, const DetectionReport& report) {
    PixelImage out = img;
    std::size_t index = 0;
    for (const auto& [label, boxes] : report.diseases) {
        const Rgb color = label_color(index++);
        for (const ReportBox& b : boxes)
            outline(out, b[1], b[0], b[3], b[2], 2, color);
    }
    return out;
}

PixelImage overlay_segments(const PixelImage& img,
                            std::span<const Segment> segments, Rgb color) {
    PixelImage out = img;
    for (const Segment& seg : segments) {
        for (int y = std::max(seg.y1, 0); y < std::min(seg.y2, out.height()); ++y) {
            for (int x = std::max(seg.x1, 0); x < std::min(seg.x2, out.width());
                 ++x) {
                const Rgb p = out.at(x, y);
                out.set(x, y, Rgb{std::uint8_t((p.r + color.r) / 2),
                                  std::uint8_t((p.g + color.g) / 2),
                                  std::uint8_t((p.b + color.b) / 2)});
            }
        }
        outline(out, seg.x1, seg.y1, seg.x2, seg.y2, 1, color);
    }
    return out;
}

} // namespace quadleaf
