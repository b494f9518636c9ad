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

#include <cstdint>
#include <iosfwd>
#include <random>

#include "adip/matrix.hpp"

namespace adip {

/// Integer matrix with its declared bit width.
struct IntMatrix {
    Matrix<std::int8_t> data;
    int width = 8;
};

/// Text format: header `rows cols width`, then rows*cols signed decimal
/// integers in row-major order (any whitespace).
/// Throws FormatError on a malformed header, missing values or trailing data,
/// WidthError when a value does not fit `width`.
[[nodiscard]] IntMatrix read_matrix_text(std::istream& in);
void write_matrix_text(std::ostream& out, const Matrix<std::int8_t>& m, int width);
void write_matrix_text(std::ostream& out, const Matrix<std::int32_t>& m);

/// Uniform random matrix over the full signed range of `width` bits.
[[nodiscard]] Matrix<std::int8_t> random_matrix(std::size_t rows, std::size_t cols, int width,
                                                std::mt19937_64& rng);

}  // namespace adip
