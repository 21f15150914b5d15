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

#include <cstdlib>
#include <iostream>

#include "quadleaf/log.hpp"

namespace quadleaf {

LogLevel log_threshold() {
    static const LogLevel threshold = [] {
        const char* env = std::getenv("QUADLEAF_LOG");
        if (!env)
            return LogLevel::warn;
        const std::string value = env;
        if (value == "error")
            return LogLevel::error;
        if (value == "info")
            return LogLevel::info;
        if (value == "debug")
            return LogLevel::debug;
        return LogLevel::warn;
    }();
    return threshold;
}

void log_message(LogLevel level, const std::string& message) {
    if (int(level) > int(log_threshold()))
        return;
    static const char* names[] = {"error", "warn", "info", "debug"};
    std::cerr << "quadleaf " << names[int(level)] << ": " << message << "\n";
}

} // namespace quadleaf
