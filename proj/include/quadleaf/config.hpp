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

#ifndef QUADLEAF_CONFIG_HPP
#define QUADLEAF_CONFIG_HPP

#include <string>

#include "quadleaf/pipeline.hpp"

namespace quadleaf {

// Built-in defaults: depth_limit 6, B = 0, late_blight refined to
// layer 1 and early_blight to layer 3, baseline classifier unset.
PipelineConfig default_config();

// Parses the versioned JSON schema (schema_version 1). Fields not
// present keep the values already in `base`; a "diseases" object
// replaces the whole disease set. Unknown keys are rejected so typos
// fail loudly. Throws ConfigError on any schema violation.
PipelineConfig parse_config(const std::string& json_text,
                            const PipelineConfig& base = default_config());

PipelineConfig load_config(const std::string& path,
                           const PipelineConfig& base = default_config());

// Canonical serialization of the effective pipeline config; equal
// configs always produce identical text.
std::string canonical_config_json(const PipelineConfig& cfg);

// FNV-1a 64-bit hash of canonical_config_json, as 16 hex digits.
std::string config_digest(const PipelineConfig& cfg);

} // namespace quadleaf

#endif
