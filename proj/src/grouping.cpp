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
#include <numeric>

#include "quadleaf/grouping.hpp"

namespace quadleaf {

namespace {

bool roi_touches(const Roi& box, const Segment& seg) {
    return box.x1 <= seg.x2 && seg.x1 <= box.x2 &&
           box.y1 <= seg.y2 && seg.y1 <= box.y2;
}

void absorb(Roi& box, const Segment& seg) {
    box.x1 = std::min(box.x1, seg.x1);
    box.y1 = std::min(box.y1, seg.y1);
    box.x2 = std::max(box.x2, seg.x2);
    box.y2 = std::max(box.y2, seg.y2);
    box.member_count += 1;
}

// Chaotic iteration to the least box containing the seed and closed
// under absorbing touching segments; the fixpoint does not depend on
// the scan order, so sorting up front fixes only the seed choice.
std::vector<Roi> group_faithful(std::vector<Segment> remaining) {
    std::vector<Roi> rois;
    while (!remaining.empty()) {
        Roi box{remaining.front().x1, remaining.front().y1,
                remaining.front().x2, remaining.front().y2, 1};
        remaining.erase(remaining.begin());
        bool grew = true;
        while (grew) {
            grew = false;
            for (auto it = remaining.begin(); it != remaining.end(); ++it) {
                if (roi_touches(box, *it)) {
                    absorb(box, *it);
                    remaining.erase(it);
                    grew = true;
                    break;
                }
            }
        }
        rois.push_back(box);
    }
    return rois;
}

std::vector<Roi> group_strict(const std::vector<Segment>& segs) {
    const std::size_t n = segs.size();
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);

    auto find = [&](std::size_t i) {
        while (parent[i] != i) {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        return i;
    };

    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (segments_touch(segs[i], segs[j]))
                parent[find(i)] = find(j);

    std::map<std::size_t, Roi> components;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t root = find(i);
        auto [it, fresh] = components.try_emplace(
            root, Roi{segs[i].x1, segs[i].y1, segs[i].x2, segs[i].y2, 1});
        if (!fresh)
            absorb(it->second, segs[i]);
    }

    std::vector<Roi> rois;
    rois.reserve(components.size());
    for (const auto& [root, box] : components)
        rois.push_back(box);
    return rois;
}

} // namespace

std::vector<Roi> group_segments(std::span<const Segment> segments,
                                GroupingMode mode) {
    std::vector<Segment> sorted(segments.begin(), segments.end());
    std::sort(sorted.begin(), sorted.end(), segment_less);

    std::vector<Roi> rois = mode == GroupingMode::faithful
                                ? group_faithful(std::move(sorted))
                                : group_strict(sorted);
    std::sort(rois.begin(), rois.end(), [](const Roi& a, const Roi& b) {
        return std::tie(a.y1, a.x1, a.y2, a.x2) < std::tie(b.y1, b.x1, b.y2, b.x2);
    });
    return rois;
}

DetectionReport localize(const FeatureMap& fmap, int width, int height,
                         GroupingMode mode) {
    DetectionReport report;
    report.width = width;
    report.height = height;
    for (const auto& [label, segments] : fmap) {
        if (segments.empty())
            continue;
        std::vector<ReportBox> boxes;
        for (const Roi& roi : group_segments(segments, mode))
            boxes.push_back({roi.y1, roi.x1, roi.y2, roi.x2});
        report.diseases.emplace(label, std::move(boxes));
    }
    return report;
}

} // namespace quadleaf
