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

#ifndef QUADLEAF_EVALBENCH_HPP
#define QUADLEAF_EVALBENCH_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "quadleaf/grouping.hpp"
#include "quadleaf/pipeline.hpp"

namespace quadleaf {

// Square count grid over a fixed label set; rows are true classes,
// columns are predicted classes.
class ConfusionMatrix {
public:
    ConfusionMatrix() = default;
    explicit ConfusionMatrix(std::vector<std::string> labels);

    const std::vector<std::string>& labels() const { return labels_; }
    std::size_t index_of(const std::string& label) const;

    void add(const std::string& true_label, const std::string& predicted);
    std::int64_t at(const std::string& true_label,
                    const std::string& predicted) const;
    std::int64_t total() const;

    bool operator==(const ConfusionMatrix&) const = default;

private:
    std::vector<std::string> labels_;
    std::vector<std::int64_t> counts_; // row-major, labels_.size() squared
};

// Metrics with zero denominators are reported absent, never as 0.
struct ClassMetrics {
    std::optional<double> precision;
    std::optional<double> recall;
    std::optional<double> f1;
    std::optional<double> specificity;
};

// Harmonic mean of precision and recall; 0 when both are 0.
double f1_score(double precision, double recall);

// One-vs-rest counts for `label` derived from the matrix.
ClassMetrics class_metrics(const ConfusionMatrix& cm, const std::string& label);

// Aligned plain-text table: one row per class, absent metrics shown
// as "-".
std::string render_metrics_table(const ConfusionMatrix& cm);

struct ConvStepParams {
    std::uint64_t di = 1; // input spatial dimension
    std::uint64_t m = 1;  // input depth
    std::uint64_t dk = 1; // kernel spatial dimension
    std::uint64_t n = 1;  // kernel count / output depth
};

struct ConvSteps {
    std::uint64_t traditional = 0; // n * di^2 * dk^2 * m
    std::uint64_t dwsc = 0;        // m * di^2 * (dk^2 + n)

    bool operator==(const ConvSteps&) const = default;
};

// Multiplication chains are overflow-checked; overflow throws
// ArithmeticError instead of wrapping. Parameters below 1 throw
// ConfigError.
ConvSteps conv_steps(const ConvStepParams& p);

struct DatasetSample {
    std::string path;
    std::string true_label;
};

struct DatasetEval {
    ConfusionMatrix cm;
    std::vector<std::pair<std::string, ClassMetrics>> per_class;
    std::vector<std::string> failures; // one message per unreadable sample
};

// Runs detect on every readable sample. The predicted label is the
// disease with the largest total ROI area (ties resolve to the
// lexicographically smallest label); no detections at all predicts
// `healthy_label`. Unreadable samples are excluded from the matrix and
// listed in failures. Throws ConfigError when samples is empty.
DatasetEval evaluate_dataset(std::span<const DatasetSample> samples,
                             const PipelineConfig& cfg, Classifier& model,
                             GroupingMode mode = GroupingMode::faithful,
                             const std::string& healthy_label = "healthy",
                             const ExecPolicy& policy = ExecPolicy{});

struct BenchResult {
    int reps = 0;
    double min_seconds = 0.0;
    double median_seconds = 0.0;
    double mean_seconds = 0.0;
    std::int64_t classifier_calls = 0;   // identical across reps
    std::int64_t segments_examined = 0;  // identical across reps
};

// Times `reps` detect runs after one unmeasured warm-up run. Counts
// come from the LayerTrace and are verified identical across reps.
// Throws ConfigError when reps < 1.
BenchResult bench_detect(const PixelImage& img, const PipelineConfig& cfg,
                         Classifier& model, int reps,
                         const ExecPolicy& policy = ExecPolicy{});

} // namespace quadleaf

#endif
