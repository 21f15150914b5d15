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

#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "quadleaf/annotate.hpp"
#include "quadleaf/baseline.hpp"
#include "quadleaf/codec.hpp"
#include "quadleaf/config.hpp"
#include "quadleaf/errors.hpp"
#include "quadleaf/evalbench.hpp"
#include "quadleaf/log.hpp"
#include "quadleaf/report.hpp"

namespace fs = std::filesystem;
using namespace quadleaf;

namespace {

// Exit codes: 0 success, 2 usage or configuration problems,
// 3 classifier failures.
constexpr int kExitUsage = 2;
constexpr int kExitClassifier = 3;

// Options shared by every subcommand that runs the pipeline. Option
// pointers let us tell "flag given" from "default value", so command
// line values override the config file only when actually passed.
struct CommonOpts {
    std::string config_path;
    std::string classifier_spec;
    int depth_limit = 0;
    int base_threshold = 0;
    double confidence_threshold = 0.5;
    bool skip_green = false;
    int threads = 1;
    std::string grouping = "faithful";

    CLI::Option* config_opt = nullptr;
    CLI::Option* classifier_opt = nullptr;
    CLI::Option* depth_opt = nullptr;
    CLI::Option* base_opt = nullptr;
    CLI::Option* conf_opt = nullptr;
    CLI::Option* skip_opt = nullptr;

    void attach(CLI::App* cmd) {
        config_opt = cmd->add_option("--config", config_path,
                                     "JSON config file (defaults are built in)");
        classifier_opt = cmd->add_option(
            "--classifier", classifier_spec,
            "Classifier spec: baseline:<model.json> or external:<command>");
        depth_opt = cmd->add_option("--depth-limit", depth_limit,
                                    "Maximum number of decomposition layers");
        base_opt = cmd->add_option("--base-threshold", base_threshold,
                                   "Layer at which segments are classified");
        conf_opt = cmd->add_option("--confidence-threshold", confidence_threshold,
                                   "Minimum confidence to keep a disease verdict");
        skip_opt = cmd->add_flag("--skip-green-refinement", skip_green,
                                 "Carry disease segments through green-"
                                 "refinement layers unchanged");
        cmd->add_option("--threads", threads,
                        "Worker threads: 1 = serial, 0 = all cores");
        cmd->add_option("--grouping", grouping,
                        "ROI grouping mode: faithful or strict")
            ->check(CLI::IsMember({"faithful", "strict"}));
    }

    PipelineConfig effective_config() const {
        PipelineConfig cfg = config_opt->count() ? load_config(config_path)
                                                 : default_config();
        if (classifier_opt->count())
            cfg.classifier_spec = classifier_spec;
        if (depth_opt->count())
            cfg.depth_limit = depth_limit;
        if (base_opt->count())
            cfg.limit_map.base_threshold = base_threshold;
        if (conf_opt->count())
            cfg.confidence_threshold = confidence_threshold;
        if (skip_opt->count())
            cfg.skip_green_refinement = skip_green;
        return cfg;
    }

    ExecPolicy policy() const { return ExecPolicy{threads}; }

    GroupingMode grouping_mode() const {
        return grouping == "strict" ? GroupingMode::strict
                                    : GroupingMode::faithful;
    }
};

std::unique_ptr<Classifier> classifier_for(const PipelineConfig& cfg) {
    if (cfg.classifier_spec.empty())
        throw ConfigError("no classifier configured; pass --classifier or set "
                          "\"classifier\" in the config file");
    return make_classifier(cfg.classifier_spec);
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::trunc);
    if (!out)
        throw IoError("cannot create " + path);
    out << text;
    if (!out)
        throw IoError("write failed for " + path);
}

// <root>/<label>/<files>, labels and file lists sorted for
// reproducible runs.
std::vector<std::pair<std::string, std::vector<std::string>>>
scan_dataset(const std::string& root) {
    if (!fs::is_directory(root))
        throw ConfigError("dataset root " + root + " is not a directory");
    std::vector<std::pair<std::string, std::vector<std::string>>> classes;
    for (const auto& entry : fs::directory_iterator(root))
        if (entry.is_directory())
            classes.emplace_back(entry.path().filename().string(),
                                 std::vector<std::string>{});
    std::sort(classes.begin(), classes.end());
    for (auto& [label, files] : classes) {
        for (const auto& entry : fs::directory_iterator(fs::path(root) / label))
            if (entry.is_regular_file())
                files.push_back(entry.path().string());
        std::sort(files.begin(), files.end());
    }
    std::erase_if(classes, [](const auto& c) { return c.second.empty(); });
    if (classes.empty())
        throw ConfigError("dataset root " + root + " contains no labeled images");
    return classes;
}

int cmd_detect(const CommonOpts& opts, const std::string& input,
               const std::string& output, const std::string& annotate_path,
               const std::string& format) {
    const PipelineConfig cfg = opts.effective_config();
    const PixelImage img = load_image(input);
    const auto model = classifier_for(cfg);

    const DetectOutput out = detect(img, cfg, *model, opts.policy());
    DetectionReport report =
        localize(out.features, img.width(), img.height(), opts.grouping_mode());
    report.config_digest = config_digest(cfg);

    const bool want_report = format == "report" || format == "both";
    const bool want_image =
        format == "image" || format == "both" || !annotate_path.empty();

    if (want_image) {
        if (annotate_path.empty())
            throw ConfigError("--format " + format + " requires --annotate");
        save_image(annotate_report(img, report), annotate_path);
        log_info("annotated image written to " + annotate_path);
    }
    if (want_report) {
        const std::string text = serialize_report(report);
        if (output.empty())
            std::cout << text;
        else
            write_text(output, text);
    }
    return 0;
}

int cmd_inspect(const CommonOpts& opts, const std::string& input,
                const std::string& out_dir) {
    const PipelineConfig cfg = opts.effective_config();
    const PixelImage img = load_image(input);
    const auto model = classifier_for(cfg);
    fs::create_directories(out_dir);

    std::cout << "depth  examined  survivors  survivor_area  classifier_calls\n";
    const LayerObserver observer = [&](const LayerRecord& rec,
                                       const std::vector<Segment>& base,
                                       const FeatureMap& features) {
        std::vector<Segment> survivors = base;
        for (const auto& [label, list] : features)
            survivors.insert(survivors.end(), list.begin(), list.end());
        const PixelImage overlay =
            overlay_segments(img, survivors, label_color(std::size_t(rec.depth)));
        save_image(overlay, (fs::path(out_dir) /
                             ("layer-" + std::to_string(rec.depth) + ".png"))
                                .string());
        std::cout << rec.depth << "  " << rec.examined << "  " << rec.survivors
                  << "  " << rec.survivor_area << "  " << rec.classifier_calls
                  << "\n";
    };

    const DetectOutput out = detect(img, cfg, *model, opts.policy(), observer);
    DetectionReport report =
        localize(out.features, img.width(), img.height(), opts.grouping_mode());
    report.config_digest = config_digest(cfg);
    save_image(annotate_report(img, report),
               (fs::path(out_dir) / "groups.png").string());
    return 0;
}

int cmd_eval(const CommonOpts& opts, const std::string& dataset,
             const std::string& healthy_label) {
    const PipelineConfig cfg = opts.effective_config();
    const auto model = classifier_for(cfg);

    std::vector<DatasetSample> samples;
    for (const auto& [label, files] : scan_dataset(dataset)) {
        if (label != healthy_label && !cfg.disease_ranges.count(label))
            throw ConfigError("dataset label '" + label +
                              "' is not a configured class");
        for (const std::string& file : files)
            samples.push_back({file, label});
    }

    const DatasetEval eval = evaluate_dataset(
        samples, cfg, *model, opts.grouping_mode(), healthy_label, opts.policy());

    std::cout << "confusion matrix (rows = true, columns = predicted)\n";
    for (const std::string& t : eval.cm.labels()) {
        std::cout << "  " << t << ":";
        for (const std::string& p : eval.cm.labels())
            std::cout << " " << p << "=" << eval.cm.at(t, p);
        std::cout << "\n";
    }
    std::cout << "\n" << render_metrics_table(eval.cm);
    if (!eval.failures.empty()) {
        std::cout << "\n" << eval.failures.size() << " sample(s) failed to load\n";
        for (const std::string& f : eval.failures)
            log_warn("skipped " + f);
    }
    return 0;
}

int cmd_bench(const CommonOpts& opts, const std::string& input, int reps) {
    const PipelineConfig cfg = opts.effective_config();
    const PixelImage img = load_image(input);
    const auto model = classifier_for(cfg);

    const BenchResult r = bench_detect(img, cfg, *model, reps, opts.policy());
    nlohmann::ordered_json doc;
    doc["reps"] = r.reps;
    doc["min_seconds"] = r.min_seconds;
    doc["median_seconds"] = r.median_seconds;
    doc["mean_seconds"] = r.mean_seconds;
    doc["classifier_calls"] = r.classifier_calls;
    doc["segments_examined"] = r.segments_examined;
    std::cout << doc.dump(2) << "\n";
    return 0;
}

int cmd_train(const std::string& dataset, const std::string& output) {
    std::map<std::string, std::vector<PixelImage>> samples;
    for (const auto& [label, files] : scan_dataset(dataset)) {
        auto& patches = samples[label];
        for (const std::string& file : files)
            patches.push_back(load_image(file));
    }
    const CentroidModel model = CentroidModel::train(samples);
    model.save(output);
    log_info("trained " + std::to_string(samples.size()) + "-class model -> " +
             output);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Leaf disease detection by conditioned quadtree decomposition"};
    app.require_subcommand(1);

    CommonOpts detect_opts, inspect_opts, eval_opts, bench_opts;
    std::string input, output, annotate_path, format = "report";
    std::string out_dir = "inspect-out";
    std::string dataset, healthy_label = "healthy";
    std::string train_dataset, train_output;
    int reps = 5;

    CLI::App* detect_cmd =
        app.add_subcommand("detect", "Detect diseases and report ROI boxes");
    detect_cmd->add_option("--input", input, "Input image (PNG or PPM)")
        ->required();
    detect_cmd->add_option("--output", output,
                           "Report file (default: standard output)");
    detect_cmd->add_option("--annotate", annotate_path,
                           "Write a copy of the input with ROI boxes drawn");
    detect_cmd->add_option("--format", format, "What to emit")
        ->check(CLI::IsMember({"report", "image", "both"}));
    detect_opts.attach(detect_cmd);

    CLI::App* inspect_cmd = app.add_subcommand(
        "inspect", "Write per-layer overlay images and a trace table");
    inspect_cmd->add_option("--input", input, "Input image (PNG or PPM)")
        ->required();
    inspect_cmd->add_option("--out-dir", out_dir, "Directory for overlays");
    inspect_opts.attach(inspect_cmd);

    CLI::App* eval_cmd = app.add_subcommand(
        "eval", "Evaluate detection on a <root>/<label>/<image> dataset");
    eval_cmd->add_option("--dataset", dataset, "Dataset root directory")
        ->required();
    eval_cmd->add_option("--healthy-label", healthy_label,
                         "Label meaning: no disease detected");
    eval_opts.attach(eval_cmd);

    CLI::App* bench_cmd =
        app.add_subcommand("bench", "Time repeated detection runs");
    bench_cmd->add_option("--input", input, "Input image (PNG or PPM)")
        ->required();
    bench_cmd->add_option("--reps", reps, "Number of timed repetitions");
    bench_opts.attach(bench_cmd);

    CLI::App* train_cmd = app.add_subcommand(
        "train", "Train the baseline classifier from labeled patches");
    train_cmd->add_option("--dataset", train_dataset, "Patch dataset root")
        ->required();
    train_cmd->add_option("--output", train_output, "Model file to write")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (detect_cmd->parsed())
            return cmd_detect(detect_opts, input, output, annotate_path, format);
        if (inspect_cmd->parsed())
            return cmd_inspect(inspect_opts, input, out_dir);
        if (eval_cmd->parsed())
            return cmd_eval(eval_opts, dataset, healthy_label);
        if (bench_cmd->parsed())
            return cmd_bench(bench_opts, input, reps);
        if (train_cmd->parsed())
            return cmd_train(train_dataset, train_output);
    } catch (const ExternalClassifierError& e) {
        log_error(e.what());
        return kExitClassifier;
    } catch (const ProtocolError& e) {
        log_error(e.what());
        return kExitClassifier;
    } catch (const ClassifyError& e) {
        log_error(e.what());
        return kExitClassifier;
    } catch (const TrainingError& e) {
        log_error(e.what());
        return kExitClassifier;
    } catch (const Error& e) {
        log_error(e.what());
        return kExitUsage;
    }
    return 0;
}
