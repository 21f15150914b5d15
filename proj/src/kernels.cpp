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

#include <omp.h>

#include "quadleaf/errors.hpp"
#include "quadleaf/kernels.hpp"

namespace quadleaf {

int resolve_threads(const ExecPolicy& policy) {
    if (policy.threads > 0)
        return policy.threads;
    return omp_get_max_threads();
}

} // namespace quadleaf

namespace quadleaf::kernels {

namespace {

void check_bounds(const Segment& seg, int width, int height) {
    if (!in_bounds(seg, width, height))
        throw BoundsError("segment [" + std::to_string(seg.x1) + "," +
                          std::to_string(seg.y1) + "," + std::to_string(seg.x2) +
                          "," + std::to_string(seg.y2) + ") exceeds image " +
                          std::to_string(width) + "x" + std::to_string(height));
}

std::int64_t count_rows_rgb(const PixelImage& img, const Segment& seg,
                            const ColorRange& range, int y1, int y2) {
    std::int64_t hits = 0;
    for (int y = y1; y < y2; ++y)
        for (int x = seg.x1; x < seg.x2; ++x)
            if (range.matches(rgb_to_hsv(img.at(x, y))))
                ++hits;
    return hits;
}

std::int64_t count_rows_hsv(const HsvImage& img, const Segment& seg,
                            const ColorRange& range, int y1, int y2) {
    std::int64_t hits = 0;
    for (int y = y1; y < y2; ++y)
        for (int x = seg.x1; x < seg.x2; ++x)
            if (range.matches(img.at(x, y)))
                ++hits;
    return hits;
}

} // namespace

namespace serial {

HsvImage to_hsv(const PixelImage& img) {
    HsvImage out(img.width(), img.height());
    for (int y = 0; y < img.height(); ++y)
        for (int x = 0; x < img.width(); ++x)
            out.set(x, y, rgb_to_hsv(img.at(x, y)));
    return out;
}

std::int64_t count_in_range(const PixelImage& img, const Segment& seg,
                            const ColorRange& range) {
    check_bounds(seg, img.width(), img.height());
    return count_rows_rgb(img, seg, range, seg.y1, seg.y2);
}

std::int64_t count_in_range(const HsvImage& img, const Segment& seg,
                            const ColorRange& range) {
    check_bounds(seg, img.width(), img.height());
    return count_rows_hsv(img, seg, range, seg.y1, seg.y2);
}

std::vector<std::int64_t> count_in_range_batch(const PixelImage& img,
                                               std::span<const Segment> segs,
                                               const ColorRange& range) {
    std::vector<std::int64_t> out(segs.size());
    for (std::size_t i = 0; i < segs.size(); ++i)
        out[i] = count_in_range(img, segs[i], range);
    return out;
}

} // namespace serial

namespace parallel {

HsvImage to_hsv(const PixelImage& img, int threads) {
    HsvImage out(img.width(), img.height());
#pragma omp parallel for num_threads(threads) schedule(static)
    for (int y = 0; y < img.height(); ++y)
        for (int x = 0; x < img.width(); ++x)
            out.set(x, y, rgb_to_hsv(img.at(x, y)));
    return out;
}

std::int64_t count_in_range(const PixelImage& img, const Segment& seg,
                            const ColorRange& range, int threads) {
    check_bounds(seg, img.width(), img.height());
    std::int64_t hits = 0;
#pragma omp parallel for num_threads(threads) schedule(static) reduction(+ : hits)
    for (int y = seg.y1; y < seg.y2; ++y)
        hits += count_rows_rgb(img, seg, range, y, y + 1);
    return hits;
}

std::int64_t count_in_range(const HsvImage& img, const Segment& seg,
                            const ColorRange& range, int threads) {
    check_bounds(seg, img.width(), img.height());
    std::int64_t hits = 0;
#pragma omp parallel for num_threads(threads) schedule(static) reduction(+ : hits)
    for (int y = seg.y1; y < seg.y2; ++y)
        hits += count_rows_hsv(img, seg, range, y, y + 1);
    return hits;
}

std::vector<std::int64_t> count_in_range_batch(const PixelImage& img,
                                               std::span<const Segment> segs,
                                               const ColorRange& range,
                                               int threads) {
    for (const Segment& seg : segs)
        check_bounds(seg, img.width(), img.height());
    std::vector<std::int64_t> out(segs.size());
    const std::int64_t n = std::int64_t(segs.size());
#pragma omp parallel for num_threads(threads) schedule(dynamic)
    for (std::int64_t i = 0; i < n; ++i)
        out[i] = count_rows_rgb(img, segs[i], range, segs[i].y1, segs[i].y2);
    return out;
}

} // namespace parallel

HsvImage to_hsv(const PixelImage& img, const ExecPolicy& policy) {
    if (policy.serial())
        return serial::to_hsv(img);
    return parallel::to_hsv(img, resolve_threads(policy));
}

std::int64_t count_in_range(const PixelImage& img, const Segment& seg,
                            const ColorRange& range, const ExecPolicy& policy) {
    if (policy.serial())
        return serial::count_in_range(img, seg, range);
    return parallel::count_in_range(img, seg, range, resolve_threads(policy));
}

std::int64_t count_in_range(const HsvImage& img, const Segment& seg,
                            const ColorRange& range, const ExecPolicy& policy) {
    if (policy.serial())
        return serial::count_in_range(img, seg, range);
    return parallel::count_in_range(img, seg, range, resolve_threads(policy));
}

std::vector<std::int64_t> count_in_range_batch(const PixelImage& img,
                                               std::span<const Segment> segs,
                                               const ColorRange& range,
                                               const ExecPolicy& policy) {
    if (policy.serial())
        return serial::count_in_range_batch(img, segs, range);
    return parallel::count_in_range_batch(img, segs, range,
                                          resolve_threads(policy));
}

} // namespace quadleaf::kernels
