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

#ifndef QUADLEAF_PIPELINE_HPP
#define QUADLEAF_PIPELINE_HPP

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "quadleaf/classifier.hpp"
#include "quadleaf/color_range.hpp"
#include "quadleaf/exec.hpp"
#include "quadleaf/image.hpp"
#include "quadleaf/quadtree.hpp"
#include "quadleaf/segment.hpp"

namespace quadleaf {

// Disease label -> surviving segments, sorted by (y1, x1, y2, x2).
// std::map keeps label iteration lexicographic, which every downstream
// ordering (reports, grouping, annotations) inherits.
using FeatureMap = std::map<std::string, std::vector<Segment>>;

// base_threshold is the layer at which green pruning stops and the
// classifier runs; limits[f] is the last layer at which feature f's
// segments are still refined by the base green color. Beyond it,
// refinement switches to the disease color.
struct LimitMap {
    int base_threshold = 0;
    std::map<std::string, int> limits;
};

struct PipelineConfig {
    int depth_limit = 0;
    LimitMap limit_map;
    ColorRange base_green;
    std::map<std::string, ColorRange> disease_ranges;
    std::string classifier_spec;
    double confidence_threshold = 0.5;
    bool skip_green_refinement = false;
};

// Throws ConfigError unless: depth_limit >= 0, base_threshold >= 0,
// limits and disease_ranges share the same keys, every limit lies in
// [base_threshold, depth_limit), confidence_threshold is in [0, 1],
// and all color ranges pass validate_range.
void validate_config(const PipelineConfig& cfg);

struct DetectOutput {
    FeatureMap features;
    LayerTrace trace;
};

// Invoked after each layer with that layer's record, the green search
// frontier, and the disease lists as they stand. Drives the
// layer-by-layer inspection output without the pipeline retaining
// per-layer snapshots itself.
using LayerObserver = std::function<void(
    const LayerRecord&, const std::vector<Segment>& base_frontier,
    const FeatureMap& features)>;

// Runs the full detection: green-pruned decomposition down to the
// classifier layer, label gating, then per-disease refinement until
// depth_limit or the one-pixel stop. Output is deterministic for a
// given (image, config, model), independent of policy.threads.
DetectOutput detect(const PixelImage& img, const PipelineConfig& cfg,
                    Classifier& model, const ExecPolicy& policy = ExecPolicy{},
                    const LayerObserver& observer = {});

} // namespace quadleaf

#endif
