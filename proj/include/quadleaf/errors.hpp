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

#include <stdexcept>
#include <string>

namespace quadleaf {

/// Base class for every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or truncated image data.
class DecodeError : public Error {
public:
    using Error::Error;
};

/// Image data is well formed but uses a variant we do not handle
/// (16-bit samples, ASCII PPM, ...).
class UnsupportedFormat : public Error {
public:
    using Error::Error;
};

/// Segment or pixel coordinates outside the image.
class BoundsError : public Error {
public:
    using Error::Error;
};

/// Attempt to split a segment thinner than 2 pixels in either dimension.
class IndivisibleSegment : public Error {
public:
    using Error::Error;
};

/// Invalid pipeline, benchmark, or CLI configuration.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Baseline model training was given an unusable sample set.
class TrainingError : public Error {
public:
    using Error::Error;
};

/// Classification could not be performed (empty patch, bad verdict).
class ClassifyError : public Error {
public:
    using Error::Error;
};

/// The external classifier process failed to run or exited nonzero.
class ExternalClassifierError : public Error {
public:
    using Error::Error;
};

/// The external classifier ran but its response violates the protocol.
class ProtocolError : public Error {
public:
    using Error::Error;
};

/// Integer overflow in an analytical calculator.
class ArithmeticError : public Error {
public:
    using Error::Error;
};

/// Filesystem-level failure (unreadable file, unwritable directory).
class IoError : public Error {
public:
    using Error::Error;
};

} // namespace quadleaf
