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

#include "adip/preprocess.hpp"

#include <array>
#include <istream>
#include <ostream>
#include <string>

#include "adip/error.hpp"
#include "adip/numerics.hpp"

namespace adip {

namespace {

void require_square(const Matrix<std::int8_t>& m) {
    if (m.rows() != m.cols()) {
        throw ShapeError("tile must be square, got " + std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()));
    }
}

std::size_t ceil_div(std::size_t a, std::size_t b) { return (a + b - 1) / b; }

template <typename T>
void put_le(std::ostream& out, T value) {
    for (std::size_t i = 0; i < sizeof(T); ++i) {
        out.put(static_cast<char>((static_cast<std::uint64_t>(value) >> (8 * i)) & 0xffu));
    }
}

template <typename T>
T get_le(std::istream& in) {
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) {
        const int c = in.get();
        if (c == std::char_traits<char>::eof()) throw FormatError("truncated packed-tile header");
        v |= static_cast<std::uint64_t>(static_cast<unsigned char>(c)) << (8 * i);
    }
    return static_cast<T>(v);
}

constexpr std::array<char, 4> kMagic{'A', 'D', 'I', 'P'};

}  // namespace

WeightTile::WeightTile(Matrix<std::int8_t> data, int width) : data_(std::move(data)), width_(width) {
    require_square(data_);
    if (!valid_width(width_)) throw WidthError("invalid weight width " + std::to_string(width_));
    for (const auto v : data_.data()) {
        if (!fits_width(v, width_)) {
            throw WidthError("weight " + std::to_string(v) + " does not fit in " +
                             std::to_string(width_) + " bits");
        }
    }
}

Matrix<std::int8_t> permute(const Matrix<std::int8_t>& tile) {
    require_square(tile);
    const std::size_t n = tile.rows();
    Matrix<std::int8_t> out(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t j = 0; j < n; ++j) out(k, j) = tile((k + j) % n, j);
    }
    return out;
}

WeightTile permute(const WeightTile& tile) { return {permute(tile.data()), tile.width()}; }

Matrix<std::int8_t> inverse_permute(const Matrix<std::int8_t>& tile) {
    require_square(tile);
    const std::size_t n = tile.rows();
    Matrix<std::int8_t> out(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t j = 0; j < n; ++j) out((k + j) % n, j) = tile(k, j);
    }
    return out;
}

WeightTile inverse_permute(const WeightTile& tile) {
    return {inverse_permute(tile.data()), tile.width()};
}

PackedWeightTile interleave(std::span<const WeightTile> tiles, PrecisionMode mode) {
    if (static_cast<int>(tiles.size()) != mode.nw()) {
        throw ModeError("mode " + mode.name() + " expects " + std::to_string(mode.nw()) +
                        " tiles, got " + std::to_string(tiles.size()));
    }
    const int width = mode.field_width();
    const std::size_t n = tiles.front().n();
    for (const auto& t : tiles) {
        if (t.width() != width) {
            throw ModeError("tile width " + std::to_string(t.width()) + " does not match mode " +
                            mode.name());
        }
        if (t.n() != n) throw ShapeError("ragged tile set");
    }

    PackedWeightTile packed{mode, Matrix<std::uint8_t>(n, n)};
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t j = 0; j < n; ++j) {
            unsigned byte = 0;
            for (std::size_t t = 0; t < tiles.size(); ++t) {
                byte |= encode_bits(tiles[t](k, j), width) << (t * static_cast<unsigned>(width));
            }
            packed.bytes(k, j) = static_cast<std::uint8_t>(byte);
        }
    }
    return packed;
}

int unpack_field(std::uint8_t byte, Precision precision, int slot) noexcept {
    const int width = weight_bits(precision);
    return sign_extend(static_cast<unsigned>(byte) >> (slot * width), width);
}

std::vector<WeightTile> deinterleave(const PackedWeightTile& packed) {
    const std::size_t n = packed.n();
    std::vector<WeightTile> out;
    out.reserve(static_cast<std::size_t>(packed.mode.nw()));
    for (int t = 0; t < packed.mode.nw(); ++t) {
        Matrix<std::int8_t> m(n, n);
        for (std::size_t k = 0; k < n; ++k) {
            for (std::size_t j = 0; j < n; ++j) {
                m(k, j) = static_cast<std::int8_t>(unpack_field(packed.bytes(k, j), packed.mode.tag(), t));
            }
        }
        out.emplace_back(std::move(m), packed.mode.field_width());
    }
    return out;
}

Matrix<std::int8_t> extract_tile(const Matrix<std::int8_t>& m, std::size_t tr, std::size_t tc,
                                 std::size_t n) {
    Matrix<std::int8_t> tile(n, n);
    for (std::size_t r = 0; r < n; ++r) {
        const std::size_t src_r = tr * n + r;
        if (src_r >= m.rows()) break;
        for (std::size_t c = 0; c < n; ++c) {
            const std::size_t src_c = tc * n + c;
            if (src_c >= m.cols()) break;
            tile(r, c) = m(src_r, src_c);
        }
    }
    return tile;
}

PackedGrid prepare_weights(std::span<const Matrix<std::int8_t>> matrices, PrecisionMode mode,
                           std::size_t n) {
    if (n == 0) throw ShapeError("tile size must be positive");
    if (matrices.empty()) throw ShapeError("no weight matrices given");
    const std::size_t rows = matrices.front().rows();
    const std::size_t cols = matrices.front().cols();
    for (const auto& m : matrices) {
        if (m.rows() != rows || m.cols() != cols) throw ShapeError("weight matrices differ in shape");
    }

    PackedGrid grid;
    grid.n = n;
    grid.mode = mode;
    grid.tile_rows = ceil_div(rows, n);
    grid.tile_cols = ceil_div(cols, n);
    grid.tiles.reserve(grid.tile_rows * grid.tile_cols);

    std::vector<WeightTile> tiles(matrices.size());
    for (std::size_t tr = 0; tr < grid.tile_rows; ++tr) {
        for (std::size_t tc = 0; tc < grid.tile_cols; ++tc) {
            for (std::size_t t = 0; t < matrices.size(); ++t) {
                tiles[t] = permute(WeightTile(extract_tile(matrices[t], tr, tc, n), mode.field_width()));
            }
            grid.tiles.push_back(interleave(tiles, mode));
        }
    }
    return grid;
}

std::vector<Matrix<std::int8_t>> recover_weights(const PackedGrid& grid) {
    const std::size_t n = grid.n;
    std::vector<Matrix<std::int8_t>> out(static_cast<std::size_t>(grid.mode.nw()),
                                         Matrix<std::int8_t>(grid.tile_rows * n, grid.tile_cols * n));
    for (std::size_t tr = 0; tr < grid.tile_rows; ++tr) {
        for (std::size_t tc = 0; tc < grid.tile_cols; ++tc) {
            const auto tiles = deinterleave(grid.at(tr, tc));
            for (std::size_t t = 0; t < tiles.size(); ++t) {
                const auto plain = inverse_permute(tiles[t].data());
                for (std::size_t r = 0; r < n; ++r) {
                    for (std::size_t c = 0; c < n; ++c) out[t](tr * n + r, tc * n + c) = plain(r, c);
                }
            }
        }
    }
    return out;
}

void write_packed_grid(std::ostream& out, const PackedGrid& grid) {
    out.write(kMagic.data(), kMagic.size());
    put_le<std::uint16_t>(out, static_cast<std::uint16_t>(grid.n));
    put_le<std::uint8_t>(out, static_cast<std::uint8_t>(grid.mode.field_width()));
    put_le<std::uint8_t>(out, static_cast<std::uint8_t>(grid.mode.nw()));
    put_le<std::uint32_t>(out, static_cast<std::uint32_t>(grid.tile_rows));
    put_le<std::uint32_t>(out, static_cast<std::uint32_t>(grid.tile_cols));
    for (const auto& tile : grid.tiles) {
        const auto bytes = tile.bytes.data();
        out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    }
}

PackedGrid read_packed_grid(std::istream& in) {
    std::array<char, 4> magic{};
    if (!in.read(magic.data(), magic.size()) || magic != kMagic) {
        throw FormatError("not a packed-tile file (bad magic)");
    }
    PackedGrid grid;
    grid.n = get_le<std::uint16_t>(in);
    const int bits = get_le<std::uint8_t>(in);
    const int nw = get_le<std::uint8_t>(in);
    grid.tile_rows = get_le<std::uint32_t>(in);
    grid.tile_cols = get_le<std::uint32_t>(in);
    if (grid.n == 0) throw FormatError("packed-tile header has n = 0");
    try {
        grid.mode = PrecisionMode(precision_for_bits(bits), nw);
    } catch (const ModeError& e) {
        throw FormatError(std::string("packed-tile header: ") + e.what());
    }

    const std::size_t count = grid.tile_rows * grid.tile_cols;
    grid.tiles.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        std::vector<std::uint8_t> bytes(grid.n * grid.n);
        if (!in.read(reinterpret_cast<char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()))) {
            throw FormatError("truncated packed-tile payload");
        }
        grid.tiles.push_back({grid.mode, Matrix<std::uint8_t>(grid.n, grid.n, std::move(bytes))});
    }
    return grid;
}

}  // namespace adip
