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

#ifndef QUADLEAF_PREDICATES_HPP
#define QUADLEAF_PREDICATES_HPP

#include "quadleaf/color_range.hpp"
#include "quadleaf/exec.hpp"
#include "quadleaf/image.hpp"
#include "quadleaf/segment.hpp"

namespace quadleaf {

// Fraction of the segment's pixels whose HSV value satisfies `range`.
// Throws BoundsError when the segment pokes outside the image.
double color_fraction(const PixelImage& img, const Segment& seg,
                      const ColorRange& range,
                      const ExecPolicy& policy = ExecPolicy{});
double color_fraction(const HsvImage& img, const Segment& seg,
                      const ColorRange& range,
                      const ExecPolicy& policy = ExecPolicy{});

// A segment carries the feature when its matching fraction reaches
// range.min_fraction (boundary inclusive).
bool has_feature(const PixelImage& img, const Segment& seg,
                 const ColorRange& range,
                 const ExecPolicy& policy = ExecPolicy{});
bool has_feature(const HsvImage& img, const Segment& seg,
                 const ColorRange& range,
                 const ExecPolicy& policy = ExecPolicy{});

} // namespace quadleaf

#endif
