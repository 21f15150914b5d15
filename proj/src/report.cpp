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

#include <json.hpp>

#include "quadleaf/errors.hpp"
#include "quadleaf/report.hpp"

namespace quadleaf {

std::string serialize_report(const DetectionReport& report) {
    nlohmann::ordered_json doc;
    doc["image"] = {{"width", report.width}, {"height", report.height}};
    doc["config_digest"] = report.config_digest;
    nlohmann::ordered_json diseases = nlohmann::ordered_json::object();
    for (const auto& [label, boxes] : report.diseases) {
        nlohmann::ordered_json list = nlohmann::ordered_json::array();
        for (const ReportBox& b : boxes)
            list.push_back({b[0], b[1], b[2], b[3]});
        diseases[label] = std::move(list);
    }
    doc["diseases"] = std::move(diseases);
    return doc.dump(2) + "\n";
}

DetectionReport parse_report(const std::string& json_text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("report is not valid JSON: ") + e.what());
    }

    DetectionReport report;
    try {
        const auto& image = doc.at("image");
        report.width = image.at("width").get<int>();
        report.height = image.at("height").get<int>();
        report.config_digest = doc.at("config_digest").get<std::string>();
        for (const auto& [label, list] : doc.at("diseases").items()) {
            std::vector<ReportBox> boxes;
            for (const auto& entry : list) {
                if (!entry.is_array() || entry.size() != 4)
                    throw ConfigError("report box must have 4 coordinates");
                boxes.push_back({entry[0].get<int>(), entry[1].get<int>(),
                                 entry[2].get<int>(), entry[3].get<int>()});
            }
            report.diseases.emplace(label, std::move(boxes));
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("report violates the schema: ") + e.what());
    }
    return report;
}

} // namespace quadleaf
