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

#include "quadleaf/predicates.hpp"

#include "quadleaf/kernels.hpp"

namespace quadleaf {

double color_fraction(const PixelImage& img, const Segment& seg,
                      const ColorRange& range, const ExecPolicy& policy) {
    const std::int64_t area = seg.area();
    if (area == 0)
        return 0.0;
    return double(kernels::count_in_range(img, seg, range, policy)) / double(area);
}

double color_fraction(const HsvImage& img, const Segment& seg,
                      const ColorRange& range, const ExecPolicy& policy) {
    const std::int64_t area = seg.area();
    if (area == 0)
        return 0.0;
    return double(kernels::count_in_range(img, seg, range, policy)) / double(area);
}

bool has_feature(const PixelImage& img, const Segment& seg,
                 const ColorRange& range, const ExecPolicy& policy) {
    return color_fraction(img, seg, range, policy) >= range.min_fraction;
}

bool has_feature(const HsvImage& img, const Segment& seg,
                 const ColorRange& range, const ExecPolicy& policy) {
    return color_fraction(img, seg, range, policy) >= range.min_fraction;
}

} // namespace quadleaf
