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

#ifndef QUADLEAF_KERNELS_HPP
#define QUADLEAF_KERNELS_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "quadleaf/color_range.hpp"
#include "quadleaf/exec.hpp"
#include "quadleaf/image.hpp"
#include "quadleaf/segment.hpp"

// Pixel-loop kernels in two interchangeable flavours: a plain serial
// walk that acts as the reference, and an OpenMP version for large
// inputs. Both reduce integers or write disjoint outputs, so results
// are identical bit for bit regardless of thread count.
namespace quadleaf::kernels {

namespace serial {

HsvImage to_hsv(const PixelImage& img);

std::int64_t count_in_range(const PixelImage& img, const Segment& seg,
                            const ColorRange& range);
std::int64_t count_in_range(const HsvImage& img, const Segment& seg,
                            const ColorRange& range);

std::vector<std::int64_t> count_in_range_batch(const PixelImage& img,
                                               std::span<const Segment> segs,
                                               const ColorRange& range);

} // namespace serial

namespace parallel {

HsvImage to_hsv(const PixelImage& img, int threads);

std::int64_t count_in_range(const PixelImage& img, const Segment& seg,
                            const ColorRange& range, int threads);
std::int64_t count_in_range(const HsvImage& img, const Segment& seg,
                            const ColorRange& range, int threads);

std::vector<std::int64_t> count_in_range_batch(const PixelImage& img,
                                               std::span<const Segment> segs,
                                               const ColorRange& range,
                                               int threads);

} // namespace parallel

// Policy-dispatched fronts; threads == 1 takes the serial path.
HsvImage to_hsv(const PixelImage& img, const ExecPolicy& policy);
std::int64_t count_in_range(const PixelImage& img, const Segment& seg,
                            const ColorRange& range, const ExecPolicy& policy);
std::int64_t count_in_range(const HsvImage& img, const Segment& seg,
                            const ColorRange& range, const ExecPolicy& policy);
std::vector<std::int64_t> count_in_range_batch(const PixelImage& img,
                                               std::span<const Segment> segs,
                                               const ColorRange& range,
                                               const ExecPolicy& policy);

} // namespace quadleaf::kernels

#endif
