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

/**
 * @file preprocess.hpp
 * @brief Weight-tile preparation: diagonal permutation, then interleaving.
 *
 * The array moves each input element one row down and one column left per
 * cycle (wrapping from column 0 to column n-1). For PE(k, j) to see operand
 * A[i][(k + j) mod n] it must hold weight W[(k + j) mod n][j], so each tile
 * column j is rotated upward by j before loading.
 *
 * Interleaving then packs r = 8 / width tiles into one byte per PE:
 * tile t occupies bits [t*width, (t+1)*width) and unused slots are zero.
 */

#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "adip/matrix.hpp"
#include "adip/mode.hpp"

namespace adip {

/// Square tile of signed weights sharing one bit width.
class WeightTile {
public:
    WeightTile() = default;
    /// Throws ShapeError if not square, WidthError if any value overflows `width`.
    WeightTile(Matrix<std::int8_t> data, int width);

    [[nodiscard]] std::size_t n() const noexcept { return data_.rows(); }
    [[nodiscard]] int width() const noexcept { return width_; }
    [[nodiscard]] const Matrix<std::int8_t>& data() const noexcept { return data_; }
    [[nodiscard]] int operator()(std::size_t r, std::size_t c) const { return data_(r, c); }

    friend bool operator==(const WeightTile&, const WeightTile&) = default;

private:
    Matrix<std::int8_t> data_;
    int width_ = 8;
};

/// n x n grid of packed 8-bit weight words for one array load.
struct PackedWeightTile {
    PrecisionMode mode = PrecisionMode::w8();
    Matrix<std::uint8_t> bytes;

    [[nodiscard]] std::size_t n() const noexcept { return bytes.rows(); }

    friend bool operator==(const PackedWeightTile&, const PackedWeightTile&) = default;
};

/// output[k][j] = input[(k + j) mod n][j]. Throws ShapeError if not square.
[[nodiscard]] Matrix<std::int8_t> permute(const Matrix<std::int8_t>& tile);
[[nodiscard]] WeightTile permute(const WeightTile& tile);

/// output[(k + j) mod n][j] = input[k][j].
[[nodiscard]] Matrix<std::int8_t> inverse_permute(const Matrix<std::int8_t>& tile);
[[nodiscard]] WeightTile inverse_permute(const WeightTile& tile);

/// Packs tiles[t] into bit-slot t of every byte. The caller has already permuted.
/// Throws ModeError when |tiles| != mode.nw() or a tile width differs from the
/// mode's field width, ShapeError for a ragged tile set.
[[nodiscard]] PackedWeightTile interleave(std::span<const WeightTile> tiles, PrecisionMode mode);

/// Signed weight held in slot t of a packed byte.
[[nodiscard]] int unpack_field(std::uint8_t byte, Precision precision, int slot) noexcept;

/// Inverse of interleave for the nw populated slots.
[[nodiscard]] std::vector<WeightTile> deinterleave(const PackedWeightTile& packed);

/// All packed tiles for one set of K x P weight matrices.
struct PackedGrid {
    std::size_t n = 0;
    PrecisionMode mode = PrecisionMode::w8();
    std::size_t tile_rows = 0;  ///< ceil(K / n)
    std::size_t tile_cols = 0;  ///< ceil(P / n)
    std::vector<PackedWeightTile> tiles;  ///< row-major over (tile_row, tile_col)

    [[nodiscard]] const PackedWeightTile& at(std::size_t tr, std::size_t tc) const {
        return tiles.at(tr * tile_cols + tc);
    }

    friend bool operator==(const PackedGrid&, const PackedGrid&) = default;
};

/// Zero-pads each matrix to multiples of n, permutes every tile, then interleaves
/// the matrices' tiles at the same grid position.
/// Throws WidthError when a value does not fit the mode's weight width.
[[nodiscard]] PackedGrid prepare_weights(std::span<const Matrix<std::int8_t>> matrices,
                                         PrecisionMode mode, std::size_t n);

/// Deinterleaves and un-permutes every tile; returns the padded matrices.
[[nodiscard]] std::vector<Matrix<std::int8_t>> recover_weights(const PackedGrid& grid);

/// Copies the zero-padded n x n block at tile (tr, tc) out of m.
[[nodiscard]] Matrix<std::int8_t> extract_tile(const Matrix<std::int8_t>& m, std::size_t tr,
                                               std::size_t tc, std::size_t n);

/// Binary dump: 16-byte little-endian header
///   "ADIP" | u16 n | u8 weight bits | u8 nw | u32 tile_rows | u32 tile_cols
/// followed by every tile's n*n bytes, row-major, tiles in grid row-major order.
void write_packed_grid(std::ostream& out, const PackedGrid& grid);
/// Throws FormatError on a bad magic, truncated stream or invalid header field.
[[nodiscard]] PackedGrid read_packed_grid(std::istream& in);

}  // namespace adip
