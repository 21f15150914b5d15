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

#ifndef QUADLEAF_ANNOTATE_HPP
#define QUADLEAF_ANNOTATE_HPP

#include <span>

#include "quadleaf/grouping.hpp"
#include "quadleaf/image.hpp"
#include "quadleaf/segment.hpp"

namespace quadleaf {

// Deterministic label colors: the i-th label in sorted order gets the
// i-th palette entry (wrapping after 8).
Rgb label_color(std::size_t sorted_index);

// Copy of the image with each disease's ROI boxes outlined two pixels
// thick in that label's color. Never changes the image dimensions.
PixelImage annotate_report(const PixelImage& img, const DetectionReport& report);

// Copy with each segment tinted toward `color` and outlined; used by
// the layer-by-layer inspection output.
PixelImage overlay_segments(const PixelImage& img,
                            std::span<const Segment> segments, Rgb color);

} // namespace quadleaf

#endif
