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

#ifndef QUADLEAF_BASELINE_HPP
#define QUADLEAF_BASELINE_HPP

#include <array>
#include <map>
#include <string>
#include <vector>

#include "quadleaf/classifier.hpp"

namespace quadleaf {

// 15-dimensional patch descriptor: mean hue scaled to [0,1], mean
// saturation, mean value, then a 12-bin hue histogram (30 degrees per
// bin) over pixels with enough chroma to have a meaningful hue
// (s > 0.05 and v > 0.05). All-grey patches get a uniform histogram.
inline constexpr std::size_t kFeatureDim = 15;
using FeatureVector = std::array<double, kFeatureDim>;

FeatureVector patch_features(const PixelImage& patch);

// Nearest-centroid model over patch_features. Classification distance
// is Euclidean; confidence contrasts the best and second-best classes.
class CentroidModel {
public:
    CentroidModel() = default;
    explicit CentroidModel(std::map<std::string, FeatureVector> centroids);

    // Directories under `root`, one per label, each holding training
    // images. Throws TrainingError when a class ends up empty.
    static CentroidModel train(
        const std::map<std::string, std::vector<PixelImage>>& samples);

    const std::map<std::string, FeatureVector>& centroids() const {
        return centroids_;
    }

    ClassifierVerdict classify(const PixelImage& patch) const;

    void save(const std::string& path) const;
    static CentroidModel load(const std::string& path);

private:
    std::map<std::string, FeatureVector> centroids_;
};

class BaselineClassifier final : public Classifier {
public:
    explicit BaselineClassifier(CentroidModel model) : model_(std::move(model)) {}

    std::vector<ClassifierVerdict>
    classify_batch(std::span<const PixelImage> patches,
                   const ExecPolicy& policy) override;

    const CentroidModel& model() const { return model_; }

private:
    CentroidModel model_;
};

} // namespace quadleaf

#endif
