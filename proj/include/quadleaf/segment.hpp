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

#include <array>
#include <cstdint>
#include <tuple>

#include "quadleaf/image.hpp"

namespace quadleaf {

/// Axis-aligned pixel rectangle with its quadtree layer.
///
/// Half-open box: (x1, y1) inclusive, (x2, y2) exclusive, so
/// width == x2 - x1 and adjacent segments tile without overlap.
struct Segment {
    int x1 = 0;
    int y1 = 0;
    int x2 = 0;
    int y2 = 0;
    int depth = 0;

    int width() const { return x2 - x1; }
    int height() const { return y2 - y1; }
    std::int64_t area() const { return std::int64_t(width()) * height(); }

    bool splittable() const { return width() >= 2 && height() >= 2; }

    bool contains(const Segment& other) const {
        return x1 <= other.x1 && other.x2 <= x2 &&
               y1 <= other.y1 && other.y2 <= y2;
    }

    bool operator==(const Segment&) const = default;
};

/// Ordering used everywhere segments are listed: by (y1, x1), then
/// (y2, x2) for totality.
inline bool segment_less(const Segment& a, const Segment& b) {
    return std::tie(a.y1, a.x1, a.y2, a.x2) < std::tie(b.y1, b.x1, b.y2, b.x2);
}

/// Segment spanning a whole image at depth 0.
inline Segment root_segment(const PixelImage& img) {
    return {0, 0, img.width(), img.height(), 0};
}

/// True when seg lies fully inside a width x height image.
inline bool in_bounds(const Segment& seg, int width, int height) {
    return seg.x1 >= 0 && seg.y1 >= 0 && seg.x1 < seg.x2 && seg.y1 < seg.y2 &&
           seg.x2 <= width && seg.y2 <= height;
}

/// Splits a segment into its four quadrants [TL, TR, BL, BR].
///
/// Split points are x1 + floor(width/2) and y1 + floor(height/2); the
/// right/bottom children absorb the remainder of odd dimensions. The
/// children are pairwise disjoint, tile the parent exactly, and carry
/// depth + 1. Throws IndivisibleSegment when either dimension is < 2.
std::array<Segment, 4> split_quadrants(const Segment& seg);

/// Copies the segment's pixels into a new (x2-x1) x (y2-y1) image.
/// Throws BoundsError when seg reaches outside img.
PixelImage crop(const PixelImage& img, const Segment& seg);

} // namespace quadleaf
