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

#ifndef QUADLEAF_GROUPING_HPP
#define QUADLEAF_GROUPING_HPP

#include <array>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "quadleaf/pipeline.hpp"
#include "quadleaf/segment.hpp"

namespace quadleaf {

struct Roi {
    int x1 = 0;
    int y1 = 0;
    int x2 = 0;
    int y2 = 0;
    int member_count = 0;

    bool operator==(const Roi&) const = default;
};

// Two grouping semantics, both deterministic:
//
// faithful: grow a box from the lexicographically smallest segment,
//   absorbing any remaining segment that touches the CURRENT box
//   (edge or corner), rescanning after every absorption; repeat on
//   leftovers. The box can swallow segments that touch it without
//   touching any member, so faithful never yields more boxes than
//   strict.
//
// strict: connected components of the segment adjacency graph (touch
//   = closed hulls intersect), one bounding box per component.
enum class GroupingMode { faithful, strict };

// True when the closed hulls of two half-open boxes intersect, which
// captures overlap, shared edges, and shared corners alike.
inline bool segments_touch(const Segment& a, const Segment& b) {
    return a.x1 <= b.x2 && b.x1 <= a.x2 && a.y1 <= b.y2 && b.y1 <= a.y2;
}

// Input segments must be pairwise disjoint. Output sorted by (y1, x1)
// and invariant under input permutation.
std::vector<Roi> group_segments(std::span<const Segment> segments,
                                GroupingMode mode);

// Boxes serialize y-first: [y1, x1, y2, x2].
using ReportBox = std::array<int, 4>;

struct DetectionReport {
    int width = 0;
    int height = 0;
    std::string config_digest;
    std::map<std::string, std::vector<ReportBox>> diseases;

    bool operator==(const DetectionReport&) const = default;
};

// Groups each disease's segments and emits the boxes in report order.
// Labels with no segments are omitted. config_digest is left empty;
// the caller stamps it when serializing.
DetectionReport localize(const FeatureMap& fmap, int width, int height,
                         GroupingMode mode);

} // namespace quadleaf

#endif
