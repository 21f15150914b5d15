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

#include "quadleaf/errors.hpp"
#include "quadleaf/kernels.hpp"
#include "quadleaf/pipeline.hpp"
#include "quadleaf/predicates.hpp"

namespace quadleaf {

void validate_config(const PipelineConfig& cfg) {
    if (cfg.depth_limit < 0)
        throw ConfigError("depth_limit must be >= 0");
    const int base = cfg.limit_map.base_threshold;
    if (base < 0)
        throw ConfigError("base colour threshold must be >= 0");
    if (cfg.confidence_threshold < 0.0 || cfg.confidence_threshold > 1.0)
        throw ConfigError("confidence_threshold must be in [0, 1]");
    validate_range(cfg.base_green, "base_green");

    for (const auto& [feature, limit] : cfg.limit_map.limits) {
        if (!cfg.disease_ranges.count(feature))
            throw ConfigError("feature '" + feature +
                              "' has a refinement limit but no color range");
        if (limit < base)
            throw ConfigError("refinement limit for '" + feature +
                              "' must be >= the base colour threshold");
        if (limit >= cfg.depth_limit)
            throw ConfigError("refinement limit for '" + feature +
                              "' must be < depth_limit");
    }
    for (const auto& [feature, range] : cfg.disease_ranges) {
        if (!cfg.limit_map.limits.count(feature))
            throw ConfigError("feature '" + feature +
                              "' has a color range but no refinement limit");
        validate_range(range, feature);
    }
}

namespace {

// Splits every splittable segment and keeps the children that carry
// `range`; one-pixel-wide or -tall segments are carried untouched so
// live detections are not dropped by the size stop. Output is sorted,
// which makes the result independent of evaluation order.
std::vector<Segment> refine(const HsvImage& hsv, std::vector<Segment> in,
                            const ColorRange& range, const ExecPolicy& policy,
                            LayerRecord& rec) {
    std::vector<Segment> out;
    std::vector<Segment> candidates;
    candidates.reserve(in.size() * 4);
    for (const Segment& parent : in) {
        if (parent.splittable()) {
            for (const Segment& child : split_quadrants(parent))
                candidates.push_back(child);
        } else {
            out.push_back(parent);
        }
    }
    rec.examined += std::int64_t(candidates.size()) + std::int64_t(out.size());

    const std::int64_t n = std::int64_t(candidates.size());
    std::vector<char> keep(candidates.size(), 0);
    if (policy.serial() || n < 8) {
        // Few large segments: let the pixel loop itself parallelize.
        for (std::int64_t i = 0; i < n; ++i)
            keep[i] = has_feature(hsv, candidates[i], range, policy);
    } else {
        // Many small segments: parallelize across them instead. Each
        // predicate is an exact integer count, so the split of work
        // cannot change any verdict.
        const int threads = resolve_threads(policy);
#pragma omp parallel for num_threads(threads) schedule(dynamic)
        for (std::int64_t i = 0; i < n; ++i)
            keep[i] = has_feature(hsv, candidates[i], range, ExecPolicy{1});
    }

    for (std::int64_t i = 0; i < n; ++i)
        if (keep[i])
            out.push_back(candidates[i]);
    std::sort(out.begin(), out.end(), segment_less);

    rec.survivors += std::int64_t(out.size());
    for (const Segment& seg : out)
        rec.survivor_area += seg.area();
    return out;
}

void carry_unchanged(const std::vector<Segment>& list, LayerRecord& rec) {
    rec.examined += std::int64_t(list.size());
    rec.survivors += std::int64_t(list.size());
    for (const Segment& seg : list)
        rec.survivor_area += seg.area();
}

} // namespace

DetectOutput detect(const PixelImage& img, const PipelineConfig& cfg,
                    Classifier& model, const ExecPolicy& policy,
                    const LayerObserver& observer) {
    validate_config(cfg);

    const HsvImage hsv = kernels::to_hsv(img, policy);
    const int base_threshold = cfg.limit_map.base_threshold;

    std::vector<Segment> base{root_segment(img)};
    FeatureMap features;
    LayerTrace trace;

    RecursionParams params{cfg.depth_limit};
    run_recursion(params, [&](int depth) {
        LayerRecord rec;
        rec.depth = depth;

        LayerOutcome dims;
        if (depth <= base_threshold) {
            for (const Segment& seg : base)
                dims.observe(seg);
        } else {
            for (const auto& [feature, list] : features)
                for (const Segment& seg : list)
                    dims.observe(seg);
        }
        rec.frontier_min_width = dims.min_width;
        rec.frontier_min_height = dims.min_height;

        if (depth < base_threshold) {
            base = refine(hsv, std::move(base), cfg.base_green, policy, rec);
        } else if (depth == base_threshold) {
            if (!base.empty()) {
                std::vector<PixelImage> patches;
                patches.reserve(base.size());
                for (const Segment& seg : base)
                    patches.push_back(crop(img, seg));
                const auto verdicts = model.classify_batch(patches, policy);
                if (verdicts.size() != patches.size())
                    throw ClassifyError("classifier returned " +
                                        std::to_string(verdicts.size()) +
                                        " verdicts for " +
                                        std::to_string(patches.size()) +
                                        " patches");
                rec.examined += std::int64_t(base.size());
                rec.classifier_calls += std::int64_t(base.size());
                for (std::size_t i = 0; i < base.size(); ++i) {
                    const ClassifierVerdict& v = verdicts[i];
                    if (cfg.disease_ranges.count(v.label) &&
                        v.confidence >= cfg.confidence_threshold) {
                        features[v.label].push_back(base[i]);
                        rec.survivors += 1;
                        rec.survivor_area += base[i].area();
                    }
                }
            }
            base.clear();
        } else {
            for (auto& [feature, list] : features) {
                const bool green_phase = depth <= cfg.limit_map.limits.at(feature);
                if (green_phase && cfg.skip_green_refinement)
                    carry_unchanged(list, rec);
                else
                    list = refine(hsv, std::move(list),
                                  green_phase ? cfg.base_green
                                              : cfg.disease_ranges.at(feature),
                                  policy, rec);
            }
        }

        trace.push_back(rec);
        if (observer)
            observer(rec, base, features);
        return dims;
    });

    std::erase_if(features, [](const auto& kv) { return kv.second.empty(); });
    return {std::move(features), std::move(trace)};
}

} // namespace quadleaf
