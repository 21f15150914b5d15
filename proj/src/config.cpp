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

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "quadleaf/config.hpp"
#include "quadleaf/errors.hpp"

namespace quadleaf {

PipelineConfig default_config() {
    PipelineConfig cfg;
    cfg.depth_limit = 6;
    cfg.limit_map.base_threshold = 0;
    cfg.confidence_threshold = 0.5;
    cfg.skip_green_refinement = false;
    cfg.base_green = ColorRange{35.0f, 85.0f, 0.25f, 0.20f, 1.0f, 0.10};
    cfg.disease_ranges["late_blight"] =
        ColorRange{10.0f, 30.0f, 0.25f, 0.05f, 0.55f, 0.10};
    cfg.limit_map.limits["late_blight"] = 1;
    cfg.disease_ranges["early_blight"] =
        ColorRange{20.0f, 45.0f, 0.25f, 0.30f, 0.80f, 0.10};
    cfg.limit_map.limits["early_blight"] = 3;
    return cfg;
}

namespace {

using nlohmann::json;

void reject_unknown_keys(const json& obj, std::initializer_list<const char*> known,
                         const std::string& where) {
    for (const auto& [key, value] : obj.items()) {
        bool ok = false;
        for (const char* k : known)
            if (key == k)
                ok = true;
        if (!ok)
            throw ConfigError("unknown key '" + key + "' in " + where);
    }
}

template <typename T>
void read_field(const json& obj, const char* key, T& out,
                const std::string& where) {
    if (!obj.contains(key))
        return;
    try {
        out = obj.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError("field '" + std::string(key) + "' in " + where +
                          " has the wrong type");
    }
}

ColorRange parse_range(const json& obj, ColorRange range,
                       const std::string& where) {
    if (!obj.is_object())
        throw ConfigError(where + " must be an object");
    reject_unknown_keys(
        obj, {"h_lo", "h_hi", "s_min", "v_min", "v_max", "min_fraction"}, where);
    read_field(obj, "h_lo", range.h_lo, where);
    read_field(obj, "h_hi", range.h_hi, where);
    read_field(obj, "s_min", range.s_min, where);
    read_field(obj, "v_min", range.v_min, where);
    read_field(obj, "v_max", range.v_max, where);
    read_field(obj, "min_fraction", range.min_fraction, where);
    return range;
}

} // namespace

PipelineConfig parse_config(const std::string& json_text,
                            const PipelineConfig& base) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!doc.is_object())
        throw ConfigError("config root must be a JSON object");

    reject_unknown_keys(doc,
                        {"schema_version", "depth_limit", "base_threshold",
                         "confidence_threshold", "skip_green_refinement",
                         "classifier", "base_green", "diseases"},
                        "config");

    int schema_version = 1;
    read_field(doc, "schema_version", schema_version, "config");
    if (schema_version != 1)
        throw ConfigError("unsupported config schema_version " +
                          std::to_string(schema_version));

    PipelineConfig cfg = base;
    read_field(doc, "depth_limit", cfg.depth_limit, "config");
    read_field(doc, "base_threshold", cfg.limit_map.base_threshold, "config");
    read_field(doc, "confidence_threshold", cfg.confidence_threshold, "config");
    read_field(doc, "skip_green_refinement", cfg.skip_green_refinement, "config");
    read_field(doc, "classifier", cfg.classifier_spec, "config");

    if (doc.contains("base_green"))
        cfg.base_green = parse_range(doc.at("base_green"), cfg.base_green,
                                     "base_green");

    if (doc.contains("diseases")) {
        const json& diseases = doc.at("diseases");
        if (!diseases.is_object())
            throw ConfigError("'diseases' must be an object");
        cfg.disease_ranges.clear();
        cfg.limit_map.limits.clear();
        for (const auto& [label, entry] : diseases.items()) {
            const std::string where = "diseases." + label;
            if (!entry.is_object())
                throw ConfigError(where + " must be an object");
            reject_unknown_keys(entry, {"limit", "range"}, where);
            if (!entry.contains("limit"))
                throw ConfigError(where + " is missing 'limit'");
            int limit = 0;
            read_field(entry, "limit", limit, where);
            ColorRange range;
            if (entry.contains("range"))
                range = parse_range(entry.at("range"), range, where + ".range");
            cfg.limit_map.limits[label] = limit;
            cfg.disease_ranges[label] = range;
        }
    }

    validate_config(cfg);
    return cfg;
}

PipelineConfig load_config(const std::string& path, const PipelineConfig& base) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open config file " + path);
    std::ostringstream text;
    text << in.rdbuf();
    try {
        return parse_config(text.str(), base);
    } catch (const ConfigError& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

std::string canonical_config_json(const PipelineConfig& cfg) {
    auto range_json = [](const ColorRange& r) {
        nlohmann::ordered_json obj;
        obj["h_lo"] = r.h_lo;
        obj["h_hi"] = r.h_hi;
        obj["s_min"] = r.s_min;
        obj["v_min"] = r.v_min;
        obj["v_max"] = r.v_max;
        obj["min_fraction"] = r.min_fraction;
        return obj;
    };

    nlohmann::ordered_json doc;
    doc["schema_version"] = 1;
    doc["depth_limit"] = cfg.depth_limit;
    doc["base_threshold"] = cfg.limit_map.base_threshold;
    doc["confidence_threshold"] = cfg.confidence_threshold;
    doc["skip_green_refinement"] = cfg.skip_green_refinement;
    doc["classifier"] = cfg.classifier_spec;
    doc["base_green"] = range_json(cfg.base_green);
    nlohmann::ordered_json diseases = nlohmann::ordered_json::object();
    for (const auto& [label, range] : cfg.disease_ranges) {
        nlohmann::ordered_json entry;
        entry["limit"] = cfg.limit_map.limits.at(label);
        entry["range"] = range_json(range);
        diseases[label] = std::move(entry);
    }
    doc["diseases"] = std::move(diseases);
    return doc.dump();
}

std::string config_digest(const PipelineConfig& cfg) {
    const std::string text = canonical_config_json(cfg);
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        hash ^= c;
        hash *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)hash);
    return std::string(buf);
}

} // namespace quadleaf
