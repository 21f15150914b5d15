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

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <set>

#include <json.hpp>

#include "quadleaf/codec.hpp"
#include "quadleaf/errors.hpp"
#include "quadleaf/external.hpp"

namespace quadleaf {

namespace {

namespace fs = std::filesystem;

// Temp workspace that cleans up even when protocol parsing throws.
struct ScratchDir {
    fs::path path;

    ScratchDir() {
        std::string tmpl = (fs::temp_directory_path() / "quadleaf-XXXXXX").string();
        if (!mkdtemp(tmpl.data()))
            throw ExternalClassifierError("mkdtemp failed for classifier scratch dir");
        path = tmpl;
    }
    ~ScratchDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
};

std::string shell_quote(const std::string& s) {
    std::string out = "'";
    for (char c : s) {
        if (c == '\'')
            out += "'\\''";
        else
            out += c;
    }
    out += "'";
    return out;
}

// Returns {stdout, exit status}. The command inherits stderr so its
// diagnostics reach the operator unmangled.
std::pair<std::string, int> run_command(const std::string& command) {
    FILE* pipe = popen(command.c_str(), "r");
    if (!pipe)
        throw ExternalClassifierError("failed to launch classifier command");
    std::string output;
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0)
        output.append(buf, got);
    const int status = pclose(pipe);
    return {std::move(output), status};
}

} // namespace

std::vector<ClassifierVerdict>
external_classify(const std::string& command,
                  std::span<const PixelImage> patches) {
    if (patches.empty())
        return {};

    ScratchDir scratch;
    nlohmann::ordered_json manifest;
    manifest["schema_version"] = 1;
    nlohmann::ordered_json entries = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < patches.size(); ++i) {
        const fs::path png_path = scratch.path / ("patch-" + std::to_string(i) + ".png");
        write_file(png_path.string(), encode_png(patches[i]));
        entries.push_back({{"id", int(i)}, {"png_path", png_path.string()}});
    }
    manifest["patches"] = std::move(entries);

    const fs::path manifest_path = scratch.path / "manifest.json";
    const std::string manifest_text = manifest.dump(2) + "\n";
    write_file(manifest_path.string(),
               std::span<const std::uint8_t>(
                   reinterpret_cast<const std::uint8_t*>(manifest_text.data()),
                   manifest_text.size()));

    auto [output, status] = run_command(command + " " +
                                        shell_quote(manifest_path.string()));
    if (status != 0)
        throw ExternalClassifierError("classifier command exited with status " +
                                      std::to_string(status));

    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(output);
    } catch (const nlohmann::json::exception& e) {
        throw ProtocolError(std::string("classifier output is not valid JSON: ") +
                            e.what());
    }
    if (!doc.is_array())
        throw ProtocolError("classifier output must be a JSON array");

    std::vector<ClassifierVerdict> verdicts(patches.size());
    std::set<int> seen;
    for (const auto& item : doc) {
        int id;
        ClassifierVerdict v;
        try {
            id = item.at("id").get<int>();
            v.label = item.at("label").get<std::string>();
            v.confidence = item.at("confidence").get<double>();
        } catch (const nlohmann::json::exception& e) {
            throw ProtocolError(std::string("malformed verdict entry: ") + e.what());
        }
        if (id < 0 || std::size_t(id) >= patches.size())
            throw ProtocolError("verdict for unknown patch id " + std::to_string(id));
        if (!seen.insert(id).second)
            throw ProtocolError("duplicate verdict for patch id " + std::to_string(id));
        if (!(v.confidence >= 0.0 && v.confidence <= 1.0))
            throw ProtocolError("confidence for patch id " + std::to_string(id) +
                                " is outside [0, 1]");
        verdicts[std::size_t(id)] = std::move(v);
    }
    for (std::size_t i = 0; i < patches.size(); ++i)
        if (!seen.count(int(i)))
            throw ProtocolError("no verdict for patch id " + std::to_string(i));
    return verdicts;
}

std::vector<ClassifierVerdict>
ExternalClassifier::classify_batch(std::span<const PixelImage> patches,
                                   const ExecPolicy&) {
    return external_classify(command_, patches);
}

} // namespace quadleaf
