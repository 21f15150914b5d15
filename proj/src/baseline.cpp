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

#include <cmath>
#include <fstream>
#include <limits>

#include <json.hpp>

#include "quadleaf/baseline.hpp"
#include "quadleaf/errors.hpp"

namespace quadleaf {

FeatureVector patch_features(const PixelImage& patch) {
    FeatureVector f{};
    const std::int64_t n = patch.pixel_count();
    if (n == 0)
        return f;

    double h_sum = 0.0, s_sum = 0.0, v_sum = 0.0;
    std::array<std::int64_t, 12> bins{};
    std::int64_t chromatic = 0;

    for (int y = 0; y < patch.height(); ++y) {
        for (int x = 0; x < patch.width(); ++x) {
            const HsvPixel p = rgb_to_hsv(patch.at(x, y));
            h_sum += p.h;
            s_sum += p.s;
            v_sum += p.v;
            if (p.s > 0.05f && p.v > 0.05f) {
                int bin = int(p.h / 30.0f);
                if (bin > 11)
                    bin = 11;
                ++bins[bin];
                ++chromatic;
            }
        }
    }

    f[0] = h_sum / double(n) / 360.0;
    f[1] = s_sum / double(n);
    f[2] = v_sum / double(n);
    for (int i = 0; i < 12; ++i)
        f[3 + i] = chromatic > 0 ? double(bins[i]) / double(chromatic) : 1.0 / 12.0;
    return f;
}

namespace {

double squared_distance(const FeatureVector& a, const FeatureVector& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < kFeatureDim; ++i) {
        const double diff = a[i] - b[i];
        d += diff * diff;
    }
    return d;
}

} // namespace

CentroidModel::CentroidModel(std::map<std::string, FeatureVector> centroids)
    : centroids_(std::move(centroids)) {
    if (centroids_.empty())
        throw TrainingError("centroid model needs at least one class");
}

CentroidModel CentroidModel::train(
    const std::map<std::string, std::vector<PixelImage>>& samples) {
    if (samples.empty())
        throw TrainingError("no training classes supplied");
    std::map<std::string, FeatureVector> centroids;
    for (const auto& [label, patches] : samples) {
        if (patches.empty())
            throw TrainingError("class '" + label + "' has no training patches");
        FeatureVector sum{};
        for (const PixelImage& patch : patches) {
            const FeatureVector f = patch_features(patch);
            for (std::size_t i = 0; i < kFeatureDim; ++i)
                sum[i] += f[i];
        }
        for (std::size_t i = 0; i < kFeatureDim; ++i)
            sum[i] /= double(patches.size());
        centroids.emplace(label, sum);
    }
    return CentroidModel(std::move(centroids));
}

ClassifierVerdict CentroidModel::classify(const PixelImage& patch) const {
    if (centroids_.empty())
        throw ClassifyError("classify called on an empty model");
    if (patch.pixel_count() == 0)
        throw ClassifyError("cannot classify an empty patch");

    const FeatureVector f = patch_features(patch);
    std::string best_label;
    double best = std::numeric_limits<double>::infinity();
    double second = std::numeric_limits<double>::infinity();

    // Map order is lexicographic, so ties resolve to the smallest label.
    for (const auto& [label, centroid] : centroids_) {
        const double d = squared_distance(f, centroid);
        if (d < best) {
            second = best;
            best = d;
            best_label = label;
        } else if (d < second) {
            second = d;
        }
    }

    if (centroids_.size() == 1)
        return {best_label, 1.0};

    const double d1 = std::sqrt(best);
    const double d2 = std::sqrt(second);
    const double denom = d1 + d2;
    const double confidence = denom > 0.0 ? 1.0 - d1 / denom : 0.5;
    return {best_label, confidence};
}

void CentroidModel::save(const std::string& path) const {
    nlohmann::ordered_json doc;
    doc["schema_version"] = 1;
    doc["kind"] = "nearest-centroid";
    nlohmann::ordered_json cents = nlohmann::ordered_json::object();
    for (const auto& [label, centroid] : centroids_)
        cents[label] = centroid;
    doc["centroids"] = std::move(cents);

    std::ofstream out(path, std::ios::trunc);
    if (!out)
        throw IoError("cannot create model file " + path);
    out << doc.dump(2) << "\n";
    if (!out)
        throw IoError("write failed for model file " + path);
}

CentroidModel CentroidModel::load(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open model file " + path);

    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("model file " + path + " is not valid JSON: " + e.what());
    }

    try {
        if (doc.at("schema_version").get<int>() != 1)
            throw ConfigError("model file " + path + ": unsupported schema_version");
        if (doc.at("kind").get<std::string>() != "nearest-centroid")
            throw ConfigError("model file " + path + ": unknown model kind");
        std::map<std::string, FeatureVector> centroids;
        for (const auto& [label, arr] : doc.at("centroids").items()) {
            if (!arr.is_array() || arr.size() != kFeatureDim)
                throw ConfigError("model file " + path + ": centroid '" + label +
                                  "' must have " + std::to_string(kFeatureDim) +
                                  " components");
            FeatureVector v{};
            for (std::size_t i = 0; i < kFeatureDim; ++i)
                v[i] = arr[i].get<double>();
            centroids.emplace(label, v);
        }
        return CentroidModel(std::move(centroids));
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("model file " + path + " is malformed: " + e.what());
    }
}

std::vector<ClassifierVerdict>
BaselineClassifier::classify_batch(std::span<const PixelImage> patches,
                                   const ExecPolicy& policy) {
    std::vector<ClassifierVerdict> out(patches.size());
    if (policy.serial()) {
        for (std::size_t i = 0; i < patches.size(); ++i)
            out[i] = model_.classify(patches[i]);
        return out;
    }
    const std::int64_t n = std::int64_t(patches.size());
    const int threads = resolve_threads(policy);
#pragma omp parallel for num_threads(threads) schedule(dynamic)
    for (std::int64_t i = 0; i < n; ++i)
        out[i] = model_.classify(patches[i]);
    return out;
}

} // namespace quadleaf
