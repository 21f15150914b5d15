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

#include "quadleaf/classifier.hpp"

#include "quadleaf/baseline.hpp"
#include "quadleaf/errors.hpp"
#include "quadleaf/external.hpp"

namespace quadleaf {

std::unique_ptr<Classifier> make_classifier(const std::string& spec) {
    const auto colon = spec.find(':');
    if (colon == std::string::npos)
        throw ConfigError("classifier spec '" + spec +
                          "' must look like scheme:argument");
    const std::string scheme = spec.substr(0, colon);
    const std::string arg = spec.substr(colon + 1);
    if (arg.empty())
        throw ConfigError("classifier spec '" + spec + "' has an empty argument");
    if (scheme == "baseline")
        return std::make_unique<BaselineClassifier>(CentroidModel::load(arg));
    if (scheme == "external")
        return std::make_unique<ExternalClassifier>(arg);
    throw ConfigError("unknown classifier scheme '" + scheme + "'");
}

} // namespace quadleaf
