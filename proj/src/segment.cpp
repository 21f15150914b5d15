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

#include "quadleaf/segment.hpp"

#include <cstring>
#include <string>

namespace quadleaf {

std::array<Segment, 4> split_quadrants(const Segment& seg) {
    if (!seg.splittable())
        throw IndivisibleSegment("cannot split " + std::to_string(seg.width()) +
                                 "x" + std::to_string(seg.height()) + " segment");
    const int mx = seg.x1 + seg.width() / 2;
    const int my = seg.y1 + seg.height() / 2;
    const int d = seg.depth + 1;
    return {{
        {seg.x1, seg.y1, mx, my, d},     // top-left
        {mx, seg.y1, seg.x2, my, d},     // top-right
        {seg.x1, my, mx, seg.y2, d},     // bottom-left
        {mx, my, seg.x2, seg.y2, d},     // bottom-right
    }};
}

PixelImage crop(const PixelImage& img, const Segment& seg) {
    if (!in_bounds(seg, img.width(), img.height()))
        throw BoundsError("segment [" + std::to_string(seg.x1) + "," +
                          std::to_string(seg.y1) + "," + std::to_string(seg.x2) +
                          "," + std::to_string(seg.y2) + ") outside " +
                          std::to_string(img.width()) + "x" +
                          std::to_string(img.height()) + " image");
    PixelImage out(seg.width(), seg.height());
    const std::size_t row_bytes = std::size_t(seg.width()) * 3;
    for (int j = 0; j < seg.height(); ++j) {
        const std::size_t src = (std::size_t(seg.y1 + j) * img.width() + seg.x1) * 3;
        const std::size_t dst = std::size_t(j) * seg.width() * 3;
        std::memcpy(out.data().data() + dst, img.data().data() + src, row_bytes);
    }
    return out;
}

} // namespace quadleaf
