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

#include "quadleaf/color_range.hpp"

#include "quadleaf/errors.hpp"

namespace quadleaf {

void validate_range(const ColorRange& range, const std::string& name) {
    auto fail = [&](const std::string& what) {
        throw ConfigError("color range '" + name + "': " + what);
    };
    if (range.h_lo < 0.0f || range.h_lo >= 360.0f)
        fail("h_lo must be in [0, 360)");
    if (range.h_hi < 0.0f || range.h_hi > 360.0f)
        fail("h_hi must be in [0, 360]");
    if (range.s_min < 0.0f || range.s_min > 1.0f)
        fail("s_min must be in [0, 1]");
    if (range.v_min < 0.0f || range.v_min > 1.0f)
        fail("v_min must be in [0, 1]");
    if (range.v_max < 0.0f || range.v_max > 1.0f)
        fail("v_max must be in [0, 1]");
    if (range.v_min > range.v_max)
        fail("v_min must not exceed v_max");
    if (range.min_fraction < 0.0 || range.min_fraction > 1.0)
        fail("min_fraction must be in [0, 1]");
}

} // namespace quadleaf
