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

#ifndef QUADLEAF_LOG_HPP
#define QUADLEAF_LOG_HPP

#include <string>

namespace quadleaf {

enum class LogLevel { error = 0, warn = 1, info = 2, debug = 3 };

// Threshold comes from QUADLEAF_LOG (error|warn|info|debug), read once
// per process; unset or unrecognized values mean warn.
LogLevel log_threshold();

// Writes "quadleaf <level>: <message>" to stderr when the level passes
// the threshold. Reports never share that stream.
void log_message(LogLevel level, const std::string& message);

inline void log_error(const std::string& m) { log_message(LogLevel::error, m); }
inline void log_warn(const std::string& m) { log_message(LogLevel::warn, m); }
inline void log_info(const std::string& m) { log_message(LogLevel::info, m); }
inline void log_debug(const std::string& m) { log_message(LogLevel::debug, m); }

} // namespace quadleaf

#endif
