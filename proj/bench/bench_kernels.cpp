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

// Timing comparison between the serial reference kernels and their
// OpenMP counterparts, plus whole detection runs at several thread
// counts. Correctness of the parallel paths is covered by the test
// suite; this tool only reports how they scale on the local machine.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "quadleaf/classifier.hpp"
#include "quadleaf/config.hpp"
#include "quadleaf/exec.hpp"
#include "quadleaf/image.hpp"
#include "quadleaf/kernels.hpp"
#include "quadleaf/pipeline.hpp"
#include "quadleaf/segment.hpp"

namespace {

using namespace quadleaf;
using Clock = std::chrono::steady_clock;

// Deterministic leaf-like scene: grey border, green body with a mild
// positional hue ripple, one brown lesion block in the middle.
PixelImage leaf_scene(int size) {
    PixelImage img(size, size);
    img.fill(hsv_to_rgb(0.0, 0.0, 0.5));
    const int border = std::max(1, size / 16);
    for (int y = border; y < size - border; ++y)
        for (int x = border; x < size - border; ++x) {
            const double ripple = double((x * 7 + y * 13) % 8);
            img.set(x, y, hsv_to_rgb(66.0 + ripple, 0.6, 0.55));
        }
    const int side = size / 4;
    const int lo = (size - side) / 2;
    for (int y = lo; y < lo + side; ++y)
        for (int x = lo; x < lo + side; ++x) {
            const double ripple = double((x * 5 + y * 11) % 6);
            img.set(x, y, hsv_to_rgb(12.0 + ripple, 0.6, 0.40));
        }
    return img;
}

struct Timing {
    double min_ms = 0.0;
    double median_ms = 0.0;
};

template <typename Fn>
Timing time_runs(int reps, Fn&& fn) {
    std::vector<double> ms;
    ms.reserve(std::size_t(reps));
    fn(); // warm-up, untimed
    for (int i = 0; i < reps; ++i) {
        const auto t0 = Clock::now();
        fn();
        ms.push_back(
            std::chrono::duration<double, std::milli>(Clock::now() - t0)
                .count());
    }
    std::sort(ms.begin(), ms.end());
    const std::size_t n = ms.size();
    Timing t;
    t.min_ms = ms.front();
    t.median_ms = n % 2 == 1 ? ms[n / 2] : 0.5 * (ms[n / 2 - 1] + ms[n / 2]);
    return t;
}

void print_row(const std::string& name, const Timing& t, double base_ms) {
    std::printf("  %-28s %9.2f ms   %9.2f ms   %6.2fx\n", name.c_str(),
                t.min_ms, t.median_ms, base_ms / std::max(t.median_ms, 1e-9));
}

// Every patch is called a confident late blight; the pipeline then does
// real refinement work over the lesion, which is what we want to time.
class AllLate final : public Classifier {
public:
    std::vector<ClassifierVerdict>
    classify_batch(std::span<const PixelImage> patches,
                   const ExecPolicy&) override {
        return std::vector<ClassifierVerdict>(patches.size(),
                                              {"late_blight", 1.0});
    }
};

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"quadleaf kernel and pipeline timing"};
    int size = 2048;
    int reps = 7;
    std::vector<int> thread_counts{2, 4, 0};
    app.add_option("--size", size, "square scene edge in pixels")
        ->check(CLI::PositiveNumber);
    app.add_option("--reps", reps, "timed repetitions per variant")
        ->check(CLI::PositiveNumber);
    app.add_option("--threads", thread_counts,
                   "thread counts for the parallel variants (0 = runtime "
                   "default)");
    CLI11_PARSE(app, argc, argv);

    const PixelImage scene = leaf_scene(size);
    std::printf("scene %dx%d, %d reps per variant, columns: min / median / "
                "speedup vs serial\n",
                size, size, reps);

    const ColorRange green{35.0, 85.0, 0.25, 0.20, 1.0, 0.10};
    const Segment frame{0, 0, size, size, 0};

    {
        std::printf("rgb -> hsv plane\n");
        const Timing serial =
            time_runs(reps, [&] { (void)kernels::serial::to_hsv(scene); });
        print_row("serial", serial, serial.median_ms);
        for (int t : thread_counts) {
            const Timing par = time_runs(
                reps, [&] { (void)kernels::parallel::to_hsv(scene, t); });
            print_row("parallel threads=" + std::to_string(t), par,
                      serial.median_ms);
        }
    }

    {
        std::printf("count_in_range, full frame\n");
        const std::int64_t want =
            kernels::serial::count_in_range(scene, frame, green);
        const Timing serial = time_runs(reps, [&] {
            (void)kernels::serial::count_in_range(scene, frame, green);
        });
        print_row("serial", serial, serial.median_ms);
        for (int t : thread_counts) {
            if (kernels::parallel::count_in_range(scene, frame, green, t) !=
                want) {
                std::fprintf(stderr, "parallel count mismatch at %d threads\n",
                             t);
                return 1;
            }
            const Timing par = time_runs(reps, [&] {
                (void)kernels::parallel::count_in_range(scene, frame, green,
                                                        t);
            });
            print_row("parallel threads=" + std::to_string(t), par,
                      serial.median_ms);
        }
    }

    {
        std::printf("count_in_range_batch, 64 px tiles\n");
        std::vector<Segment> tiles;
        for (int y = 0; y + 64 <= size; y += 64)
            for (int x = 0; x + 64 <= size; x += 64)
                tiles.push_back({x, y, x + 64, y + 64, 0});
        const Timing serial = time_runs(reps, [&] {
            (void)kernels::serial::count_in_range_batch(scene, tiles, green);
        });
        print_row("serial", serial, serial.median_ms);
        for (int t : thread_counts) {
            const Timing par = time_runs(reps, [&] {
                (void)kernels::parallel::count_in_range_batch(scene, tiles,
                                                              green, t);
            });
            print_row("parallel threads=" + std::to_string(t), par,
                      serial.median_ms);
        }
    }

    {
        std::printf("detect, built-in defaults\n");
        AllLate clf;
        const PipelineConfig cfg = default_config();
        const Timing serial = time_runs(
            reps, [&] { (void)detect(scene, cfg, clf, ExecPolicy{1}); });
        print_row("serial", serial, serial.median_ms);
        for (int t : thread_counts) {
            const Timing par = time_runs(
                reps, [&] { (void)detect(scene, cfg, clf, ExecPolicy{t}); });
            print_row("parallel threads=" + std::to_string(t), par,
                      serial.median_ms);
        }
    }

    return 0;
}
