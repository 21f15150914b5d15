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

#ifndef QUADLEAF_QUADTREE_HPP
#define QUADLEAF_QUADTREE_HPP

#include <algorithm>
#include <cstdint>
#include <vector>

#include "quadleaf/errors.hpp"
#include "quadleaf/segment.hpp"

namespace quadleaf {

// Control state for the layer loop. depth_count is the index of the
// next layer to run; depth_check flips to 1 once the active frontier
// has shrunk to one pixel in either dimension, halting the whole run.
struct RecursionParams {
    int depth_limit = 0;
    int depth_count = 0;
    int depth_check = 0;
};

// What a layer reports back to the engine: the smallest width and
// height among the segments it looked at before splitting. {0, 0}
// means the layer had nothing to examine and never stops the run.
struct LayerOutcome {
    int min_width = 0;
    int min_height = 0;

    void observe(const Segment& seg) {
        if (min_width == 0 || seg.width() < min_width)
            min_width = seg.width();
        if (min_height == 0 || seg.height() < min_height)
            min_height = seg.height();
    }

    bool stops_recursion() const { return min_width == 1 || min_height == 1; }
};

// Per-layer observability record. `examined` counts every segment the
// layer tested (children of splits, carried slivers, classified
// patches); survivors are the subset kept for the next layer.
struct LayerRecord {
    int depth = 0;
    std::int64_t examined = 0;
    std::int64_t survivors = 0;
    std::int64_t survivor_area = 0;
    std::int64_t classifier_calls = 0;
    int frontier_min_width = 0;
    int frontier_min_height = 0;
};

using LayerTrace = std::vector<LayerRecord>;

// Drives the layer loop: invokes `layer(depth_count)` while
// depth_check is 0 and depth_count has not reached depth_limit,
// incrementing depth_count after each call and tripping depth_check
// when the layer saw a segment of width or height 1.
//
// The loop is iterative rather than self-recursive; carrying the
// state through a lambda capture is observationally identical and
// immune to stack depth. Returns the number of layers processed.
template <typename LayerFn>
int run_recursion(RecursionParams& params, LayerFn&& layer) {
    if (params.depth_limit < 0)
        throw ConfigError("depth_limit must be >= 0");
    if (params.depth_count != 0 || params.depth_check != 0)
        throw ConfigError("recursion params must start at depth 0 with the "
                          "stop flag clear");
    while (params.depth_check == 0 && params.depth_count != params.depth_limit) {
        const LayerOutcome outcome = layer(params.depth_count);
        params.depth_count += 1;
        if (outcome.stops_recursion())
            params.depth_check = 1;
    }
    return params.depth_count;
}

} // namespace quadleaf

#endif
