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

#pragma once

namespace quadleaf {

/// Execution policy threaded through kernels and the pipeline.
///
/// threads == 1 selects the serial reference path, threads > 1 the OpenMP
/// path with that many threads, threads <= 0 the OpenMP path with the
/// runtime default thread count. Results are identical on every path.
struct ExecPolicy {
    int threads = 1;

    bool serial() const { return threads == 1; }
};

/// Resolved thread count for an OpenMP region (>= 1).
int resolve_threads(const ExecPolicy& policy);

} // namespace quadleaf
