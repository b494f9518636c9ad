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

#include "adip/matrix_io.hpp"

#include <istream>
#include <ostream>
#include <string>

#include "adip/error.hpp"
#include "adip/numerics.hpp"

namespace adip {

IntMatrix read_matrix_text(std::istream& in) {
    long long rows = 0, cols = 0;
    int width = 0;
    if (!(in >> rows >> cols >> width)) throw FormatError("matrix file: expected header 'rows cols width'");
    if (rows <= 0 || cols <= 0) throw FormatError("matrix file: dimensions must be positive");
    if (!valid_width(width)) throw WidthError("matrix file: width must be 2, 4 or 8");

    Matrix<std::int8_t> m(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols));
    for (auto& v : m.data()) {
        long long x = 0;
        if (!(in >> x)) throw FormatError("matrix file: fewer than rows*cols values");
        if (x < min_value(width) || x > max_value(width)) {
            throw WidthError("matrix file: value " + std::to_string(x) + " does not fit in " +
                             std::to_string(width) + " bits");
        }
        v = static_cast<std::int8_t>(x);
    }
    std::string extra;
    if (in >> extra) throw FormatError("matrix file: trailing data after rows*cols values");
    return {std::move(m), width};
}

void write_matrix_text(std::ostream& out, const Matrix<std::int8_t>& m, int width) {
    out << m.rows() << ' ' << m.cols() << ' ' << width << '\n';
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) out << (c ? " " : "") << static_cast<int>(m(r, c));
        out << '\n';
    }
}

void write_matrix_text(std::ostream& out, const Matrix<std::int32_t>& m) {
    out << m.rows() << ' ' << m.cols() << " 32\n";
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) out << (c ? " " : "") << m(r, c);
        out << '\n';
    }
}

Matrix<std::int8_t> random_matrix(std::size_t rows, std::size_t cols, int width, std::mt19937_64& rng) {
    if (!valid_width(width)) throw WidthError("invalid width " + std::to_string(width));
    std::uniform_int_distribution<int> dist(min_value(width), max_value(width));
    Matrix<std::int8_t> m(rows, cols);
    for (auto& v : m.data()) v = static_cast<std::int8_t>(dist(rng));
    return m;
}

}  // namespace adip
