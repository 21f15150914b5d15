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

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "quadleaf/baseline.hpp"
#include "quadleaf/codec.hpp"
#include "quadleaf/evalbench.hpp"
#include "support/synthetic.hpp"

using namespace quadleaf;

namespace {

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        std::random_device rd;
        path = std::filesystem::temp_directory_path() /
               ("quadleaf-eval-" + std::to_string(rd()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
};

ConfusionMatrix sample_matrix() {
    // rows true, columns predicted:
    //        a  b  c
    //   a    5  2  1
    //   b    1  6  0
    //   c    0  1  4
    ConfusionMatrix cm(std::vector<std::string>{"a", "b", "c"});
    auto bump = [&](const std::string& t, const std::string& p, int times) {
        for (int i = 0; i < times; ++i)
            cm.add(t, p);
    };
    bump("a", "a", 5);
    bump("a", "b", 2);
    bump("a", "c", 1);
    bump("b", "a", 1);
    bump("b", "b", 6);
    bump("c", "b", 1);
    bump("c", "c", 4);
    return cm;
}

} // namespace

TEST_CASE("confusion matrix stores counts by label pair") {
    const ConfusionMatrix cm = sample_matrix();
    CHECK(cm.total() == 20);
    CHECK(cm.at("a", "a") == 5);
    CHECK(cm.at("a", "c") == 1);
    CHECK(cm.at("b", "c") == 0);
    CHECK(cm.at("c", "b") == 1);
    CHECK(cm.index_of("b") == 1);
    CHECK(cm.labels() == std::vector<std::string>{"a", "b", "c"});

    CHECK_THROWS_AS(cm.index_of("zz"), ConfigError);
    CHECK_THROWS_AS(cm.at("a", "zz"), ConfigError);
    ConfusionMatrix writable = cm;
    CHECK_THROWS_AS(writable.add("zz", "a"), ConfigError);

    CHECK_THROWS_AS(ConfusionMatrix(std::vector<std::string>{}), ConfigError);
    CHECK_THROWS_AS(ConfusionMatrix(std::vector<std::string>{"a", "a"}),
                    ConfigError);
}

TEST_CASE("per class metrics match hand computed one vs rest counts") {
    const ConfusionMatrix cm = sample_matrix();

    // Label a: tp=5, fn=3, fp=1, tn=11.
    const ClassMetrics a = class_metrics(cm, "a");
    REQUIRE(a.precision);
    REQUIRE(a.recall);
    REQUIRE(a.f1);
    REQUIRE(a.specificity);
    CHECK(*a.precision == doctest::Approx(5.0 / 6.0));
    CHECK(*a.recall == doctest::Approx(5.0 / 8.0));
    CHECK(*a.f1 == doctest::Approx(5.0 / 7.0)); // 2PR/(P+R) reduced by hand
    CHECK(*a.specificity == doctest::Approx(11.0 / 12.0));

    // Label c: tp=4, fn=1, fp=1, tn=14.
    const ClassMetrics c = class_metrics(cm, "c");
    CHECK(*c.precision == doctest::Approx(4.0 / 5.0));
    CHECK(*c.recall == doctest::Approx(4.0 / 5.0));
    CHECK(*c.f1 == doctest::Approx(4.0 / 5.0));
    CHECK(*c.specificity == doctest::Approx(14.0 / 15.0));
}

TEST_CASE("metrics are label order independent") {
    const ConfusionMatrix cm = sample_matrix();
    ConfusionMatrix reordered(std::vector<std::string>{"c", "a", "b"});
    for (const std::string& t : cm.labels())
        for (const std::string& p : cm.labels())
            for (std::int64_t i = 0; i < cm.at(t, p); ++i)
                reordered.add(t, p);

    CHECK(reordered.total() == cm.total());
    for (const std::string& label : cm.labels()) {
        const ClassMetrics lhs = class_metrics(cm, label);
        const ClassMetrics rhs = class_metrics(reordered, label);
        CHECK(*lhs.precision == doctest::Approx(*rhs.precision));
        CHECK(*lhs.recall == doctest::Approx(*rhs.recall));
        CHECK(*lhs.f1 == doctest::Approx(*rhs.f1));
        CHECK(*lhs.specificity == doctest::Approx(*rhs.specificity));
    }
}

TEST_CASE("perfect predictions score one everywhere") {
    ConfusionMatrix cm(std::vector<std::string>{"x", "y"});
    cm.add("x", "x");
    cm.add("x", "x");
    cm.add("y", "y");
    for (const std::string& label : cm.labels()) {
        const ClassMetrics m = class_metrics(cm, label);
        CHECK(*m.precision == 1.0);
        CHECK(*m.recall == 1.0);
        CHECK(*m.f1 == 1.0);
        CHECK(*m.specificity == 1.0);
    }
}

TEST_CASE("zero denominators leave metrics absent instead of zero") {
    // "a" is never true and never predicted: precision, recall, f1 all
    // have empty denominators; specificity is still well defined.
    ConfusionMatrix cm(std::vector<std::string>{"a", "b"});
    cm.add("b", "b");
    cm.add("b", "b");
    const ClassMetrics a = class_metrics(cm, "a");
    CHECK(!a.precision);
    CHECK(! a.recall);
    CHECK(!a.f1);
    REQUIRE(a.specificity);
    CHECK(*a.specificity == 1.0);

    // "a" exists but is never predicted right or at all: recall is a
    // real 0, precision stays absent, so f1 stays absent too.
    ConfusionMatrix missed(std::vector<std::string>{"a", "b"});
    missed.add("a", "b");
    const ClassMetrics m = class_metrics(missed, "a");
    CHECK(!m.precision);
    REQUIRE(m.recall);
    CHECK(*m.recall == 0.0);
    CHECK(!m.f1);
}

TEST_CASE("f1 matches the published rows within print precision") {
    struct Row {
        double precision, recall, printed, tolerance;
    };
    // Two rows round cleanly; the other two were printed with a final
    // digit that only matches at 1e-3.
    const Row rows[] = {
        {0.9664, 0.7250, 0.8288, 0.001},
        {0.7869, 0.8421, 0.8136, 0.0005},
        {0.8430, 0.8718, 0.8571, 0.0005},
        {0.6420, 0.9231, 0.7579, 0.001},
    };
    for (const Row& row : rows) {
        CAPTURE(row.printed);
        CHECK(std::abs(f1_score(row.precision, row.recall) - row.printed) <=
              row.tolerance);
    }
}

TEST_CASE("f1 lies between precision and recall") {
    CHECK(f1_score(0.0, 0.0) == 0.0);
    CHECK(f1_score(0.5, 0.5) == doctest::Approx(0.5));
    std::mt19937 rng(7919);
    std::uniform_real_distribution<double> unit(0.001, 1.0);
    for (int i = 0; i < 2000; ++i) {
        const double p = unit(rng), r = unit(rng);
        const double f1 = f1_score(p, r);
        CHECK(f1 >= std::min(p, r) - 1e-12);
        CHECK(f1 <= std::max(p, r) + 1e-12);
        CHECK(f1 == doctest::Approx(f1_score(r, p))); // symmetric
    }
}

TEST_CASE("metrics table renders labels, values, and absent dashes") {
    ConfusionMatrix cm(std::vector<std::string>{"early_blight", "healthy"});
    cm.add("healthy", "healthy");
    cm.add("healthy", "healthy");
    cm.add("early_blight", "healthy");

    const std::string table = render_metrics_table(cm);
    CHECK(table.find("class") != std::string::npos);
    CHECK(table.find("precision") != std::string::npos);
    CHECK(table.find("recall") != std::string::npos);
    CHECK(table.find("f1") != std::string::npos);
    CHECK(table.find("specificity") != std::string::npos);
    CHECK(table.find("early_blight") != std::string::npos);
    CHECK(table.find("healthy") != std::string::npos);
    CHECK(table.find("-") != std::string::npos);      // absent precision
    CHECK(table.find("0.0000") != std::string::npos); // recall of early_blight
    CHECK(table.find("1.0000") != std::string::npos);
    CHECK(table.back() == '\n');
}

TEST_CASE("convolution step counts match worked examples") {
    CHECK(conv_steps({14, 3, 3, 1}) == ConvSteps{5292, 5880});
    CHECK(conv_steps({14, 3, 3, 64}) == ConvSteps{338688, 42924});
    // Single 1x1 kernel: pointwise work only, depthwise pass doubles it.
    CHECK(conv_steps({10, 7, 1, 1}) == ConvSteps{700, 1400});
}

TEST_CASE("convolution parameters are validated and overflow checked") {
    CHECK_THROWS_AS(conv_steps({0, 3, 3, 1}), ConfigError);
    CHECK_THROWS_AS(conv_steps({14, 0, 3, 1}), ConfigError);
    CHECK_THROWS_AS(conv_steps({14, 3, 0, 1}), ConfigError);
    CHECK_THROWS_AS(conv_steps({14, 3, 3, 0}), ConfigError);

    const std::uint64_t big = std::uint64_t(1) << 20;
    CHECK_THROWS_AS(conv_steps({big, 1, big, 1}), ArithmeticError);
    // dwsc can overflow even when the traditional count fits.
    const std::uint64_t half = std::uint64_t(1) << 31;
    CHECK_NOTHROW(conv_steps({half, 1, 1, 2}));
    CHECK_THROWS_AS(conv_steps({half, 1, 1, 3}), ArithmeticError);
}

TEST_CASE("separable convolution wins exactly when the algebra says so") {
    std::mt19937 rng(7927);
    std::uniform_int_distribution<std::uint64_t> di(1, 64), m(1, 8), dk(1, 9),
        n(1, 128);
    for (int i = 0; i < 10000; ++i) {
        const ConvStepParams p{di(rng), m(rng), dk(rng), n(rng)};
        const ConvSteps s = conv_steps(p);
        const std::uint64_t dk2 = p.dk * p.dk;
        const bool wins = p.n * (dk2 - 1) > dk2;
        CAPTURE(p.di);
        CAPTURE(p.m);
        CAPTURE(p.dk);
        CAPTURE(p.n);
        CHECK((s.dwsc < s.traditional) == wins);
    }
}

TEST_CASE("dataset evaluation on labeled synthetic patches") {
    std::mt19937 rng(7933);
    const auto patches = synth::training_patches(rng);
    BaselineClassifier clf(CentroidModel::train(patches));

    TempDir dir;
    std::vector<DatasetSample> samples;
    for (const auto& [label, imgs] : patches) {
        int i = 0;
        for (const PixelImage& img : imgs) {
            const auto path =
                dir.path / (label + "-" + std::to_string(i++) + ".png");
            save_image(img, path.string());
            samples.push_back({path.string(), label});
        }
    }

    // Whole-patch classification: these images are 64x64 crops of the
    // kind the classifier was trained on.
    PipelineConfig cfg = synth::detection_config();
    cfg.depth_limit = 4;
    cfg.limit_map.base_threshold = 0;
    cfg.limit_map.limits = {{"late_blight", 1}, {"early_blight", 2}};

    const DatasetEval eval = evaluate_dataset(samples, cfg, clf);
    CHECK(eval.failures.empty());
    CHECK(eval.cm.total() == std::int64_t(samples.size()));
    CHECK(eval.cm.labels() ==
          std::vector<std::string>{"early_blight", "healthy", "late_blight"});
    REQUIRE(eval.per_class.size() == 3);
    for (const auto& [label, metrics] : eval.per_class) {
        CAPTURE(label);
        REQUIRE(metrics.f1);
        CHECK(*metrics.f1 >= 0.9);
    }
}

TEST_CASE("unreadable samples are excluded and reported") {
    std::mt19937 rng(7937);
    TempDir dir;

    const auto good_path = (dir.path / "leaf.png").string();
    save_image(synth::grey_image(32, 32), good_path);
    const auto corrupt_path = (dir.path / "corrupt.png").string();
    std::ofstream(corrupt_path) << "not a png at all";

    const std::vector<DatasetSample> samples{
        {good_path, "healthy"},
        {corrupt_path, "late_blight"},
        {(dir.path / "missing.png").string(), "healthy"},
    };

    BaselineClassifier clf(synth::synthetic_model(rng));
    const DatasetEval eval =
        evaluate_dataset(samples, synth::detection_config(), clf);

    REQUIRE(eval.failures.size() == 2);
    CHECK(eval.failures[0].find(corrupt_path) != std::string::npos);
    CHECK(eval.failures[1].find("missing.png") != std::string::npos);
    CHECK(eval.cm.total() == 1);
    CHECK(eval.cm.at("healthy", "healthy") == 1);
}

TEST_CASE("dataset evaluation accepts labels outside the disease set") {
    std::mt19937 rng(7949);
    TempDir dir;
    const auto path = (dir.path / "odd.png").string();
    save_image(synth::grey_image(16, 16), path);

    BaselineClassifier clf(synth::synthetic_model(rng));
    const std::vector<DatasetSample> samples{{path, "rust"}};
    const DatasetEval eval =
        evaluate_dataset(samples, synth::detection_config(), clf);
    CHECK(eval.cm.at("rust", "healthy") == 1);

    CHECK_THROWS_AS(evaluate_dataset(std::vector<DatasetSample>{},
                                     synth::detection_config(), clf),
                    ConfigError);
}

TEST_CASE("benchmark reports stable counts and ordered timings") {
    std::mt19937 rng(7951);
    BaselineClassifier clf(synth::synthetic_model(rng));
    const PipelineConfig cfg = synth::detection_config();

    // Grey frame: the frontier dies at layer 0, so the counts are
    // known exactly.
    const BenchResult grey =
        bench_detect(synth::grey_image(64, 64), cfg, clf, 5);
    CHECK(grey.reps == 5);
    CHECK(grey.classifier_calls == 0);
    CHECK(grey.segments_examined == 4);
    CHECK(grey.min_seconds > 0.0);
    CHECK(grey.min_seconds <= grey.median_seconds);
    CHECK(grey.min_seconds <= grey.mean_seconds);

    // Counts must agree with a direct run's trace sums.
    const synth::Scene scene = synth::detection_scene(rng);
    const BenchResult bench = bench_detect(scene.img, cfg, clf, 3);
    const DetectOutput direct = detect(scene.img, cfg, clf);
    std::int64_t calls = 0, examined = 0;
    for (const LayerRecord& rec : direct.trace) {
        calls += rec.classifier_calls;
        examined += rec.examined;
    }
    CHECK(bench.classifier_calls == calls);
    CHECK(bench.segments_examined == examined);

    CHECK_THROWS_AS(bench_detect(scene.img, cfg, clf, 0), ConfigError);
}
