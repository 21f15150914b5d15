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

#ifndef QUADLEAF_EXTERNAL_HPP
#define QUADLEAF_EXTERNAL_HPP

#include <span>
#include <string>
#include <vector>

#include "quadleaf/classifier.hpp"

namespace quadleaf {

// Runs `command <manifest-path>` once for the whole batch. The manifest
// is a JSON file listing PNG patch paths in a private temp directory;
// the command answers on stdout with a JSON array of verdicts. See
// docs/external-classifier.md for the wire format.
//
// Throws ExternalClassifierError when the process fails (nonzero exit,
// cannot launch) and ProtocolError when the output violates the
// contract (bad JSON, missing/duplicate/unknown ids, confidence
// outside [0, 1]).
std::vector<ClassifierVerdict>
external_classify(const std::string& command,
                  std::span<const PixelImage> patches);

class ExternalClassifier final : public Classifier {
public:
    explicit ExternalClassifier(std::string command)
        : command_(std::move(command)) {}

    std::vector<ClassifierVerdict>
    classify_batch(std::span<const PixelImage> patches,
                   const ExecPolicy& policy) override;

private:
    std::string command_;
};

} // namespace quadleaf

#endif
