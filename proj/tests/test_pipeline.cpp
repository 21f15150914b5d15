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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <string>
#include <vector>

#include "quadleaf/baseline.hpp"
#include "quadleaf/pipeline.hpp"
#include "support/synthetic.hpp"

using namespace quadleaf;

namespace {

// Labels every patch the same way and counts how often it is asked.
class FixedClassifier final : public Classifier {
public:
    FixedClassifier(std::string label, double confidence)
        : label_(std::move(label)), confidence_(confidence) {}

    std::vector<ClassifierVerdict>
    classify_batch(std::span<const PixelImage> patches, const ExecPolicy&) override {
        batches += 1;
        patches_seen += std::int64_t(patches.size());
        return std::vector<ClassifierVerdict>(patches.size(),
                                              {label_, confidence_});
    }

    int batches = 0;
    std::int64_t patches_seen = 0;

private:
    std::string label_;
    double confidence_;
};

// Deliberately answers one verdict short.
class ShortClassifier final : public Classifier {
public:
    std::vector<ClassifierVerdict>
    classify_batch(std::span<const PixelImage> patches, const ExecPolicy&) override {
        if (patches.empty())
            return {};
        return std::vector<ClassifierVerdict>(patches.size() - 1, {"x", 1.0});
    }
};

const Rgb kLeafColor = hsv_to_rgb(70.0, 0.6, 0.55);
const Rgb kLateColor = hsv_to_rgb(15.0, 0.6, 0.40);
const Rgb kGreyColor = hsv_to_rgb(0.0, 0.0, 0.5);

PixelImage constant_image(int w, int h, Rgb color) {
    PixelImage img(w, h);
    img.fill(color);
    return img;
}

// Single-disease config sharing the synthetic suite's color ranges.
PipelineConfig late_config(int depth_limit, int base_threshold, int late_limit) {
    PipelineConfig cfg = synth::detection_config();
    cfg.depth_limit = depth_limit;
    cfg.limit_map.base_threshold = base_threshold;
    cfg.limit_map.limits = {{"late_blight", late_limit}};
    cfg.disease_ranges.erase("early_blight");
    return cfg;
}

std::int64_t list_sizes(const FeatureMap& fmap) {
    std::int64_t n = 0;
    for (const auto& [label, list] : fmap)
        n += std::int64_t(list.size());
    return n;
}

} // namespace

TEST_CASE("config validation catches every inconsistency") {
    const PipelineConfig good = synth::detection_config();
    CHECK_NOTHROW(validate_config(good));

    PipelineConfig bad = good;
    bad.depth_limit = -1;
    CHECK_THROWS_AS(validate_config(bad), ConfigError);

    bad = good;
    bad.limit_map.base_threshold = -2;
    CHECK_THROWS_AS(validate_config(bad), ConfigError);

    bad = good;
    bad.confidence_threshold = 1.5;
    CHECK_THROWS_AS(validate_config(bad), ConfigError);

    // Refinement limit at the depth limit: the disease-color phase
    // would never run, so the config is rejected outright.
    bad = good;
    bad.limit_map.limits["early_blight"] = bad.depth_limit;
    CHECK_THROWS_AS(validate_config(bad), ConfigError);

    bad = good;
    bad.limit_map.limits["early_blight"] = bad.limit_map.base_threshold - 1;
    CHECK_THROWS_AS(validate_config(bad), ConfigError);

    bad = good;
    bad.limit_map.limits["rust"] = 3; // no matching color range
    CHECK_THROWS_AS(validate_config(bad), ConfigError);

    bad = good;
    bad.disease_ranges["rust"] = ColorRange{}; // no matching limit
    try {
        validate_config(bad);
        CHECK(false);
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("rust") != std::string::npos);
    }

    bad = good;
    bad.base_green.h_lo = -5.0f;
    CHECK_THROWS_AS(validate_config(bad), ConfigError);

    bad = good;
    bad.disease_ranges["late_blight"].v_min = 2.0f;
    CHECK_THROWS_AS(validate_config(bad), ConfigError);

    // detect() validates before touching the image.
    FixedClassifier clf("late_blight", 0.9);
    bad = good;
    bad.depth_limit = -3;
    CHECK_THROWS_AS(detect(constant_image(4, 4, kLeafColor), bad, clf),
                    ConfigError);
}

TEST_CASE("all grey image empties the frontier and never classifies") {
    FixedClassifier clf("late_blight", 0.9);
    const PipelineConfig cfg = synth::detection_config(); // B = 1
    const auto out = detect(constant_image(64, 64, kGreyColor), cfg, clf);

    CHECK(out.features.empty());
    CHECK(clf.batches == 0);
    CHECK(clf.patches_seen == 0);

    // The frontier dies at layer 0 but empty layers keep running as
    // no-ops until the depth limit.
    REQUIRE(out.trace.size() == std::size_t(cfg.depth_limit));
    CHECK(out.trace[0].examined == 4);
    CHECK(out.trace[0].survivors == 0);
    for (const auto& rec : out.trace)
        CHECK(rec.classifier_calls == 0);
    for (std::size_t i = 1; i < out.trace.size(); ++i) {
        CHECK(out.trace[i].examined == 0);
        CHECK(out.trace[i].frontier_min_width == 0);
        CHECK(out.trace[i].frontier_min_height == 0);
    }
}

TEST_CASE("threshold zero classifies the whole image as one segment") {
    FixedClassifier clf("late_blight", 0.9);
    const PipelineConfig cfg = late_config(3, 0, 0);
    const PixelImage img = constant_image(16, 16, kLateColor);
    const auto out = detect(img, cfg, clf);

    CHECK(clf.batches == 1);
    CHECK(clf.patches_seen == 1);
    REQUIRE(out.trace.size() == 3);
    CHECK(out.trace[0].classifier_calls == 1);
    CHECK(out.trace[0].frontier_min_width == 16);

    // Pure lesion color: both disease layers keep all children.
    REQUIRE(out.features.count("late_blight") == 1);
    const auto& segs = out.features.at("late_blight");
    CHECK(segs.size() == 16);
    for (const Segment& seg : segs) {
        CHECK(seg.depth == 2);
        CHECK(seg.width() == 4);
    }
}

TEST_CASE("gate keeps only confident disease labels") {
    const PixelImage img = constant_image(16, 16, kLateColor);
    const PipelineConfig cfg = late_config(3, 0, 0);

    SUBCASE("healthy label is dropped regardless of confidence") {
        FixedClassifier clf("healthy", 0.99);
        CHECK(detect(img, cfg, clf).features.empty());
    }
    SUBCASE("unknown disease label is dropped") {
        FixedClassifier clf("rust", 0.99);
        CHECK(detect(img, cfg, clf).features.empty());
    }
    SUBCASE("low confidence is dropped") {
        FixedClassifier clf("late_blight", 0.49);
        CHECK(detect(img, cfg, clf).features.empty());
    }
    SUBCASE("threshold boundary is inclusive") {
        FixedClassifier clf("late_blight", 0.5);
        CHECK(!detect(img, cfg, clf).features.empty());
    }
}

TEST_CASE("verdict count mismatch raises ClassifyError") {
    ShortClassifier clf;
    const PixelImage img = constant_image(16, 16, kLateColor);
    CHECK_THROWS_AS(detect(img, late_config(3, 0, 0), clf), ClassifyError);
}

TEST_CASE("green refinement then disease refinement narrows to the lesion") {
    // 32x32 leaf with an 8x8 lesion at (8,8): the green phase keeps
    // every 16x16 quadrant (the lesion is only a quarter of one), the
    // disease phase then isolates the lesion quadrant exactly.
    PixelImage img = constant_image(32, 32, kLeafColor);
    for (int y = 8; y < 16; ++y)
        for (int x = 8; x < 16; ++x)
            img.set(x, y, kLateColor);

    FixedClassifier clf("late_blight", 0.9);
    const auto out = detect(img, late_config(3, 0, 1), clf);

    REQUIRE(out.features.count("late_blight") == 1);
    const auto& segs = out.features.at("late_blight");
    REQUIRE(segs.size() == 1);
    CHECK(segs[0] == Segment{8, 8, 16, 16, 2});

    // Layer 1 (green phase) kept all four children.
    CHECK(out.trace[1].examined == 4);
    CHECK(out.trace[1].survivors == 4);
    // Layer 2 (disease phase) examined 16 children, kept the lesion.
    CHECK(out.trace[2].examined == 16);
    CHECK(out.trace[2].survivors == 1);
}

TEST_CASE("skip_green_refinement carries segments through the green phase") {
    PixelImage img = constant_image(32, 32, kLeafColor);
    for (int y = 0; y < 8; ++y)
        for (int x = 0; x < 8; ++x)
            img.set(x, y, kLateColor);

    FixedClassifier clf("late_blight", 0.9);
    PipelineConfig cfg = late_config(2, 0, 0);
    cfg.limit_map.limits["late_blight"] = 1; // green phase at layer 1
    cfg.depth_limit = 2;

    // Faithful behavior: the green layer splits and filters.
    const auto faithful = detect(img, cfg, clf);
    REQUIRE(faithful.features.count("late_blight") == 1);
    CHECK(faithful.features.at("late_blight").size() == 4); // all quadrants green enough

    cfg.skip_green_refinement = true;
    const auto skipped = detect(img, cfg, clf);
    REQUIRE(skipped.features.count("late_blight") == 1);
    const auto& segs = skipped.features.at("late_blight");
    REQUIRE(segs.size() == 1);
    CHECK(segs[0] == root_segment(img)); // carried unchanged, never split
    CHECK(skipped.trace[1].examined == 1);
    CHECK(skipped.trace[1].survivors == 1);
}

TEST_CASE("one pixel rows freeze instead of vanishing") {
    // An 8x2 image reaches 4x1 children after one split; those are
    // carried unsplit and the next layer trips the global stop.
    FixedClassifier clf("late_blight", 0.9);
    const PixelImage img = constant_image(8, 2, kLateColor);
    const auto out = detect(img, late_config(5, 0, 0), clf);

    REQUIRE(out.trace.size() == 3); // layers 0, 1, 2; the 4x1 frontier stops the run
    REQUIRE(out.features.count("late_blight") == 1);
    const auto& segs = out.features.at("late_blight");
    CHECK(segs.size() == 4);
    for (const Segment& seg : segs) {
        CHECK(seg.height() == 1);
        CHECK(seg.depth == 1);
    }
    CHECK(out.trace[2].examined == 4);   // carried slivers still count
    CHECK(out.trace[2].survivors == 4);
}

TEST_CASE("single pixel image classifies once and stops") {
    FixedClassifier clf("late_blight", 1.0);
    const auto out = detect(constant_image(1, 1, kLateColor),
                            late_config(4, 0, 0), clf);
    REQUIRE(out.trace.size() == 1); // 1x1 frontier trips immediately
    CHECK(out.trace[0].classifier_calls == 1);
    REQUIRE(out.features.count("late_blight") == 1);
    CHECK(out.features.at("late_blight").front() == Segment{0, 0, 1, 1, 0});
}

TEST_CASE("trace bookkeeping matches the observer's view") {
    std::mt19937 rng(211);
    const synth::Scene scene = synth::detection_scene(rng);
    BaselineClassifier clf(synth::synthetic_model(rng));
    const PipelineConfig cfg = synth::detection_config();

    std::vector<LayerRecord> seen;
    std::size_t mismatches = 0;
    const auto out = detect(
        scene.img, cfg, clf, ExecPolicy{},
        [&](const LayerRecord& rec, const std::vector<Segment>& base,
            const FeatureMap& features) {
            seen.push_back(rec);
            std::int64_t count = std::int64_t(base.size()) + list_sizes(features);
            std::int64_t area = 0;
            for (const Segment& seg : base)
                area += seg.area();
            for (const auto& [label, list] : features)
                for (const Segment& seg : list)
                    area += seg.area();
            mismatches += rec.survivors != count;
            mismatches += rec.survivor_area != area;
        });

    CHECK(mismatches == 0);
    REQUIRE(seen.size() == out.trace.size());
    for (std::size_t i = 0; i < seen.size(); ++i) {
        CHECK(seen[i].depth == int(i));
        CHECK(out.trace[i].depth == int(i));
        CHECK(out.trace[i].examined == seen[i].examined);
        CHECK(out.trace[i].survivors >= 0);
        CHECK(out.trace[i].survivors <= out.trace[i].examined);
    }

    // Classifier batches run exactly once, at the threshold layer,
    // over the frontier the previous layer produced.
    const int b = cfg.limit_map.base_threshold;
    for (std::size_t i = 0; i < out.trace.size(); ++i) {
        if (int(i) == b)
            CHECK(out.trace[i].classifier_calls == out.trace[i - 1].survivors);
        else
            CHECK(out.trace[i].classifier_calls == 0);
    }
}

TEST_CASE("detected segments stay inside planted lesions of their label") {
    std::mt19937 rng(223);
    BaselineClassifier clf(synth::synthetic_model(rng));
    const PipelineConfig cfg = synth::detection_config();

    int scenes_with_detections = 0;
    for (int trial = 0; trial < 5; ++trial) {
        const synth::Scene scene = synth::detection_scene(rng);
        const auto out = detect(scene.img, cfg, clf);
        scenes_with_detections += !out.features.empty();

        for (const auto& [label, segs] : out.features) {
            CHECK(!segs.empty());
            for (const Segment& seg : segs) {
                CHECK(in_bounds(seg, scene.img.width(), scene.img.height()));
                bool overlaps_own_lesion = false;
                for (const synth::Lesion& lesion : scene.lesions) {
                    const bool overlap = seg.x1 < lesion.box.x2 &&
                                         lesion.box.x1 < seg.x2 &&
                                         seg.y1 < lesion.box.y2 &&
                                         lesion.box.y1 < seg.y2;
                    overlaps_own_lesion |= overlap && lesion.label == label;
                }
                CHECK(overlaps_own_lesion);
            }
            // Lists arrive sorted and pairwise disjoint.
            for (std::size_t i = 0; i + 1 < segs.size(); ++i)
                CHECK(segment_less(segs[i], segs[i + 1]));
            for (std::size_t i = 0; i < segs.size(); ++i)
                for (std::size_t j = i + 1; j < segs.size(); ++j) {
                    const bool overlap = segs[i].x1 < segs[j].x2 &&
                                         segs[j].x1 < segs[i].x2 &&
                                         segs[i].y1 < segs[j].y2 &&
                                         segs[j].y1 < segs[i].y2;
                    CHECK(!overlap);
                }
        }
    }
    CHECK(scenes_with_detections == 5);
}

TEST_CASE("every detection descends from a gated quadrant of the same label") {
    std::mt19937 rng(227);
    const synth::Scene scene = synth::detection_scene(rng);
    BaselineClassifier clf(synth::synthetic_model(rng));
    const PipelineConfig cfg = synth::detection_config();

    FeatureMap gated;
    const auto out = detect(scene.img, cfg, clf, ExecPolicy{},
                            [&](const LayerRecord& rec, const std::vector<Segment>&,
                                const FeatureMap& features) {
                                if (rec.depth == cfg.limit_map.base_threshold)
                                    gated = features;
                            });

    for (const auto& [label, segs] : out.features) {
        REQUIRE(gated.count(label) == 1);
        for (const Segment& seg : segs) {
            bool has_ancestor = false;
            for (const Segment& root : gated.at(label))
                has_ancestor |= root.contains(seg);
            CHECK(has_ancestor);
        }
    }
}

TEST_CASE("detection output is identical across runs and thread counts") {
    std::mt19937 rng(229);
    const synth::Scene scene = synth::detection_scene(rng);
    BaselineClassifier clf(synth::synthetic_model(rng));
    const PipelineConfig cfg = synth::detection_config();

    const auto first = detect(scene.img, cfg, clf, ExecPolicy{1});
    const auto again = detect(scene.img, cfg, clf, ExecPolicy{1});
    CHECK(first.features == again.features);

    for (const int threads : {2, 8}) {
        const auto parallel = detect(scene.img, cfg, clf, ExecPolicy{threads});
        CHECK(parallel.features == first.features);
        REQUIRE(parallel.trace.size() == first.trace.size());
        for (std::size_t i = 0; i < first.trace.size(); ++i) {
            CHECK(parallel.trace[i].examined == first.trace[i].examined);
            CHECK(parallel.trace[i].survivors == first.trace[i].survivors);
            CHECK(parallel.trace[i].classifier_calls ==
                  first.trace[i].classifier_calls);
        }
    }
}

TEST_CASE("shortening the depth limit only coarsens detections") {
    // With one refinement phase boundary fixed, each surviving parent
    // in the shorter run must keep at least one child alive in the
    // longer run: equal-size splits make the max child fraction at
    // least the parent's, so the deeper filter cannot kill them all.
    std::mt19937 rng(233);
    BaselineClassifier clf(synth::synthetic_model(rng));

    PipelineConfig deep = synth::detection_config();
    deep.limit_map.limits = {{"late_blight", 2}};
    deep.disease_ranges.erase("early_blight");
    PipelineConfig shallow = deep;
    shallow.depth_limit = deep.depth_limit - 1;

    for (int trial = 0; trial < 3; ++trial) {
        const synth::Scene scene = synth::detection_scene(rng);
        const auto fine = detect(scene.img, deep, clf);
        const auto coarse = detect(scene.img, shallow, clf);

        for (const auto& [label, coarse_segs] : coarse.features) {
            if (!fine.features.count(label))
                continue;
            const auto& fine_segs = fine.features.at(label);
            for (const Segment& parent : coarse_segs) {
                bool covers_child = false;
                for (const Segment& child : fine_segs)
                    covers_child |= parent.contains(child);
                CHECK(covers_child);
            }
        }
    }
}
