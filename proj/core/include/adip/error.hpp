/*
 * Copyright 2026 The ADiP Simulator Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
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

namespace adip {

/// Base class for every error raised by the simulator library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bit width outside {2, 4, 8}, or a value that does not fit its width.
class WidthError : public Error {
public:
    using Error::Error;
};

/// Mismatched or ragged matrix/tile dimensions.
class ShapeError : public Error {
public:
    using Error::Error;
};

/// Weight precision does not agree with the array's operating mode.
class ModeError : public Error {
public:
    using Error::Error;
};

/// Operation issued in the wrong array phase (e.g. streaming before a weight load).
class PhaseError : public Error {
public:
    using Error::Error;
};

/// Malformed external input (files, JSON configs, CLI values).
class FormatError : public Error {
public:
    using Error::Error;
};

}  // namespace adip
