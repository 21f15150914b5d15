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

#ifndef QUADLEAF_REPORT_HPP
#define QUADLEAF_REPORT_HPP

#include <string>

#include "quadleaf/grouping.hpp"

namespace quadleaf {

// Detection report wire format (schema is exactly these keys):
//   {"image": {"width": W, "height": H},
//    "config_digest": "<16 hex digits>",
//    "diseases": {"<label>": [[y1, x1, y2, x2], ...], ...}}
// Identical reports serialize to identical bytes.
std::string serialize_report(const DetectionReport& report);

// Inverse of serialize_report; throws ConfigError on schema
// violations. parse_report(serialize_report(r)) == r.
DetectionReport parse_report(const std::string& json_text);

} // namespace quadleaf

#endif
