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

#ifndef QUADLEAF_COLOR_RANGE_HPP
#define QUADLEAF_COLOR_RANGE_HPP

#include <string>

#include "quadleaf/image.hpp"

namespace quadleaf {

// An HSV acceptance test plus the fraction of matching pixels a segment
// needs before it counts as carrying that color.
//
// The hue interval [h_lo, h_hi] is closed and may wrap around 360
// (h_lo > h_hi means "h >= h_lo or h <= h_hi").
struct ColorRange {
    float h_lo = 0.0f;
    float h_hi = 360.0f;
    float s_min = 0.0f;
    float v_min = 0.0f;
    float v_max = 1.0f;
    double min_fraction = 0.0;

    bool matches(const HsvPixel& p) const {
        if (p.s < s_min || p.v < v_min || p.v > v_max)
            return false;
        if (h_lo <= h_hi)
            return p.h >= h_lo && p.h <= h_hi;
        return p.h >= h_lo || p.h <= h_hi;
    }

    bool operator==(const ColorRange&) const = default;
};

// Throws ConfigError when bounds fall outside their domains; `name` is
// included in the message so config errors point at the offending range.
void validate_range(const ColorRange& range, const std::string& name);

} // namespace quadleaf

#endif
