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
#include <chrono>
#include <cmath>
#include <iomanip>
#include <set>
#include <sstream>

#include "quadleaf/codec.hpp"
#include "quadleaf/errors.hpp"
#include "quadleaf/evalbench.hpp"

namespace quadleaf {

ConfusionMatrix::ConfusionMatrix(std::vector<std::string> labels)
    : labels_(std::move(labels)), counts_(labels_.size() * labels_.size(), 0) {
    if (labels_.empty())
        throw ConfigError("confusion matrix needs at least one label");
    std::set<std::string> unique(labels_.begin(), labels_.end());
    if (unique.size() != labels_.size())
        throw ConfigError("confusion matrix labels must be unique");
}

std::size_t ConfusionMatrix::index_of(const std::string& label) const {
    const auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end())
        throw ConfigError("label '" + label + "' is not in the confusion matrix");
    return std::size_t(it - labels_.begin());
}

void ConfusionMatrix::add(const std::string& true_label,
                          const std::string& predicted) {
    counts_[index_of(true_label) * labels_.size() + index_of(predicted)] += 1;
}

std::int64_t ConfusionMatrix::at(const std::string& true_label,
                                 const std::string& predicted) const {
    return counts_[index_of(true_label) * labels_.size() + index_of(predicted)];
}

std::int64_t ConfusionMatrix::total() const {
    std::int64_t sum = 0;
    for (std::int64_t c : counts_)
        sum += c;
    return sum;
}

double f1_score(double precision, double recall) {
    const double denom = precision + recall;
    if (denom == 0.0)
        return 0.0;
    return 2.0 * precision * recall / denom;
}

ClassMetrics class_metrics(const ConfusionMatrix& cm, const std::string& label) {
    std::int64_t tp = 0, fp = 0, fn = 0, tn = 0;
    for (const std::string& t : cm.labels()) {
        for (const std::string& p : cm.labels()) {
            const std::int64_t c = cm.at(t, p);
            if (t == label && p == label)
                tp += c;
            else if (t == label)
                fn += c;
            else if (p == label)
                fp += c;
            else
                tn += c;
        }
    }

    ClassMetrics m;
    if (tp + fp > 0)
        m.precision = double(tp) / double(tp + fp);
    if (tp + fn > 0)
        m.recall = double(tp) / double(tp + fn);
    if (m.precision && m.recall && (*m.precision + *m.recall) > 0.0)
        m.f1 = f1_score(*m.precision, *m.recall);
    if (tn + fp > 0)
        m.specificity = double(tn) / double(tn + fp);
    return m;
}

std::string render_metrics_table(const ConfusionMatrix& cm) {
    auto cell = [](const std::optional<double>& v) {
        if (!v)
            return std::string("-");
        std::ostringstream os;
        os << std::fixed << std::setprecision(4) << *v;
        return os.str();
    };

    std::size_t name_width = 5; // "class"
    for (const std::string& label : cm.labels())
        name_width = std::max(name_width, label.size());

    std::ostringstream os;
    os << std::left << std::setw(int(name_width)) << "class" << std::right
       << std::setw(11) << "precision" << std::setw(11) << "recall"
       << std::setw(11) << "f1" << std::setw(13) << "specificity" << "\n";
    for (const std::string& label : cm.labels()) {
        const ClassMetrics m = class_metrics(cm, label);
        os << std::left << std::setw(int(name_width)) << label << std::right
           << std::setw(11) << cell(m.precision) << std::setw(11)
           << cell(m.recall) << std::setw(11) << cell(m.f1) << std::setw(13)
           << cell(m.specificity) << "\n";
    }
    return os.str();
}

namespace {

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
    std::uint64_t out;
    if (__builtin_mul_overflow(a, b, &out))
        throw ArithmeticError("convolution step count overflows 64 bits");
    return out;
}

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
    std::uint64_t out;
    if (__builtin_add_overflow(a, b, &out))
        throw ArithmeticError("convolution step count overflows 64 bits");
    return out;
}

} // namespace

ConvSteps conv_steps(const ConvStepParams& p) {
    if (p.di < 1 || p.m < 1 || p.dk < 1 || p.n < 1)
        throw ConfigError("convolution parameters must all be >= 1");
    const std::uint64_t di2 = checked_mul(p.di, p.di);
    const std::uint64_t dk2 = checked_mul(p.dk, p.dk);
    ConvSteps s;
    s.traditional = checked_mul(checked_mul(p.n, di2), checked_mul(dk2, p.m));
    s.dwsc = checked_mul(checked_mul(p.m, di2), checked_add(dk2, p.n));
    return s;
}

namespace {

std::string predict_label(const DetectionReport& report,
                          const std::string& healthy_label) {
    std::string best = healthy_label;
    std::int64_t best_area = 0;
    for (const auto& [label, boxes] : report.diseases) {
        std::int64_t area = 0;
        for (const ReportBox& b : boxes)
            area += std::int64_t(b[3] - b[1]) * std::int64_t(b[2] - b[0]);
        // Map order is lexicographic, so strict > keeps the smallest
        // label on ties.
        if (area > best_area) {
            best_area = area;
            best = label;
        }
    }
    return best;
}

} // namespace

DatasetEval evaluate_dataset(std::span<const DatasetSample> samples,
                             const PipelineConfig& cfg, Classifier& model,
                             GroupingMode mode, const std::string& healthy_label,
                             const ExecPolicy& policy) {
    if (samples.empty())
        throw ConfigError("evaluate_dataset needs at least one sample");
    validate_config(cfg);

    std::set<std::string> label_set{healthy_label};
    for (const auto& [feature, range] : cfg.disease_ranges)
        label_set.insert(feature);
    for (const DatasetSample& s : samples)
        label_set.insert(s.true_label);

    DatasetEval eval;
    eval.cm = ConfusionMatrix(
        std::vector<std::string>(label_set.begin(), label_set.end()));

    for (const DatasetSample& s : samples) {
        PixelImage img(1, 1);
        try {
            img = load_image(s.path);
        } catch (const Error& e) {
            eval.failures.push_back(s.path + ": " + e.what());
            continue;
        }
        const DetectOutput out = detect(img, cfg, model, policy);
        const DetectionReport report =
            localize(out.features, img.width(), img.height(), mode);
        eval.cm.add(s.true_label, predict_label(report, healthy_label));
    }

    for (const std::string& label : eval.cm.labels())
        eval.per_class.emplace_back(label, class_metrics(eval.cm, label));
    return eval;
}

BenchResult bench_detect(const PixelImage& img, const PipelineConfig& cfg,
                         Classifier& model, int reps, const ExecPolicy& policy) {
    if (reps < 1)
        throw ConfigError("bench reps must be >= 1");

    auto count_trace = [](const LayerTrace& trace) {
        std::pair<std::int64_t, std::int64_t> counts{0, 0};
        for (const LayerRecord& rec : trace) {
            counts.first += rec.classifier_calls;
            counts.second += rec.examined;
        }
        return counts;
    };

    // Warm-up run, also the reference for the determinism check.
    const auto reference = count_trace(detect(img, cfg, model, policy).trace);

    std::vector<double> seconds;
    seconds.reserve(std::size_t(reps));
    for (int r = 0; r < reps; ++r) {
        const auto start = std::chrono::steady_clock::now();
        const DetectOutput out = detect(img, cfg, model, policy);
        const auto stop = std::chrono::steady_clock::now();
        seconds.push_back(std::chrono::duration<double>(stop - start).count());
        if (count_trace(out.trace) != reference)
            throw Error("detect produced different counts across repetitions");
    }

    std::vector<double> ordered = seconds;
    std::sort(ordered.begin(), ordered.end());
    const std::size_t mid = ordered.size() / 2;
    const double median = ordered.size() % 2 == 1
                              ? ordered[mid]
                              : 0.5 * (ordered[mid - 1] + ordered[mid]);

    double mean = 0.0;
    for (double s : seconds)
        mean += s;
    mean /= double(seconds.size());

    return BenchResult{reps,          ordered.front(),  median,
                       mean,          reference.first,  reference.second};
}

} // namespace quadleaf
