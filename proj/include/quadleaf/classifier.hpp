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

#ifndef QUADLEAF_CLASSIFIER_HPP
#define QUADLEAF_CLASSIFIER_HPP

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "quadleaf/exec.hpp"
#include "quadleaf/image.hpp"

namespace quadleaf {

struct ClassifierVerdict {
    std::string label;
    double confidence = 0.0; // always in [0, 1]

    bool operator==(const ClassifierVerdict&) const = default;
};

// Batch interface so implementations can amortize per-call overhead
// (the external backend writes one manifest per batch). Results are
// positional: verdict i belongs to patch i.
class Classifier {
public:
    virtual ~Classifier() = default;
    virtual std::vector<ClassifierVerdict>
    classify_batch(std::span<const PixelImage> patches,
                   const ExecPolicy& policy) = 0;
};

// Builds a classifier from a spec string:
//   "baseline:<model-path>"  nearest-centroid model stored as JSON
//   "external:<command>"     subprocess speaking the manifest protocol
// Throws ConfigError for unknown schemes.
std::unique_ptr<Classifier> make_classifier(const std::string& spec);

} // namespace quadleaf

#endif
