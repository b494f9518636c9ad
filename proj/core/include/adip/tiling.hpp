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
 * @file tiling.hpp
 * @brief Block matrix multiplication on the array, plus a brute-force oracle.
 *
 * C_t = A * B_t for every weight matrix B_t sharing the input A. A pass is one
 * weight-tile load followed by streaming all tm*n (padded) rows of the
 * matching A column block. Passes run in j -> k -> i order: the outer loop
 * walks groups of output column tiles, the middle loop walks the reduction
 * dimension, and the whole i loop is one continuous stream. Output psums are
 * kept in an on-chip accumulator across k and written once.
 *
 * A pass packs up to r = 8 / weight_bits weight "units" (a column tile of one
 * B matrix) into the interleaved slots, since they all consume the same input
 * block. Units are grouped either across matrices at the same column tile, or
 * across consecutive column tiles.
 */

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "adip/array.hpp"
#include "adip/matrix.hpp"
#include "adip/mode.hpp"

namespace adip {

enum class Fusion {
    AcrossMatrices,  ///< slot t holds matrix t's tile at the same column position
    AcrossColumns,   ///< slots hold consecutive (matrix, column tile) units
};

struct MatMulJob {
    Matrix<std::int8_t> a;               ///< M x K activations
    std::vector<Matrix<std::int8_t>> bs;  ///< weight matrices, each K x P
    Precision precision = Precision::W8;
    std::size_t n = 4;
    Fusion fusion = Fusion::AcrossMatrices;
};

/// One column tile of one weight matrix.
struct WeightUnit {
    std::size_t matrix = 0;
    std::size_t tile_col = 0;
    friend bool operator==(const WeightUnit&, const WeightUnit&) = default;
};

struct Pass {
    std::size_t tile_k = 0;
    std::vector<WeightUnit> units;  ///< 1..r units, slot order
};

struct TiledPlan {
    std::size_t n = 0;
    std::size_t tm = 0, tk = 0, tp = 0;
    Precision precision = Precision::W8;
    std::vector<Pass> passes;

    [[nodiscard]] std::size_t pass_count() const noexcept { return passes.size(); }
    [[nodiscard]] std::size_t streamed_rows() const noexcept { return tm * n; }
};

/// Throws ShapeError for zero-sized dimensions or n == 0.
[[nodiscard]] TiledPlan plan_tiles(std::size_t m, std::size_t k, std::size_t p, std::size_t matrices,
                                   Precision precision, std::size_t n, Fusion fusion);

struct TimingOptions {
    int s_stages = 1;
    std::optional<int> e_stages;  ///< default: reducer depth of the precision
    bool overlap_weight_load = false;
};

/// Cycles for one pass streaming `rows` rows: rows + n + S + E - 2.
[[nodiscard]] Cycle pass_cycles(std::size_t rows, std::size_t n, int s_stages, int e_stages) noexcept;

/// Model total for a plan: every pass plus n cycles per weight load
/// (only the first load when loads overlap).
[[nodiscard]] Cycle model_cycles(const TiledPlan& plan, const TimingOptions& timing);

/// Validates shapes. Throws ShapeError / WidthError.
void validate(const MatMulJob& job);

/// C_t[i][j] = sum_k A[i][k] * B_t[k][j], plain i-j-k triple loop.
[[nodiscard]] std::vector<Matrix<std::int32_t>> oracle_matmul(const MatMulJob& job);

/// Same product accumulated in k-i-j order, as an independent cross-check.
[[nodiscard]] std::vector<Matrix<std::int32_t>> oracle_matmul_kij(const MatMulJob& job);

struct TiledResult {
    std::vector<Matrix<std::int32_t>> results;  ///< one M x P matrix per B
    Cycle total_cycles = 0;                     ///< measured on the simulator
    std::size_t pass_count = 0;
    TiledPlan plan;
};

/// Runs the job through the cycle-accurate array.
[[nodiscard]] TiledResult run_tiled(const MatMulJob& job, const TimingOptions& timing = {},
                                    std::ostream* trace = nullptr);

}  // namespace adip
