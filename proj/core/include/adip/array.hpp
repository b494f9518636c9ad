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
 * @file array.hpp
 * @brief Cycle-accurate N x N adaptive-precision systolic array.
 *
 * Dataflow, per clock edge:
 *  - one input row enters PE row 0 unskewed: PE(0, c) takes element c;
 *  - the input registered at PE(r, c) moves to PE(r+1, (c-1) mod n), so the
 *    leftmost column feeds the rightmost column of the next row;
 *  - psums move one PE down each column on four buses (one per MUL group);
 *  - under each column, a shared shifter/accumulator reduces the buses:
 *
 *        bus0 bus1 bus2 bus3
 *          \  <<2   \  <<2        stage 1 : W4 tap (two 4-bit products)
 *           a        b
 *            \  <<4 /             stage 2 : W8 tap (one 8-bit product)
 *              out
 *
 *    W2 takes the four buses directly.
 *
 * Because every column of a row is fed on the same cycle, all n outputs of
 * an input row leave the array together; no output deskew is needed.
 *
 * Cycle numbering starts at 1. A row entering on cycle t leaves the bottom
 * PE row on cycle t + n - 1 and its result is available S - 1 + E cycles
 * later, where E is the reducer depth of the mode (plus any extra stages).
 */

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "adip/matrix.hpp"
#include "adip/mode.hpp"
#include "adip/pe.hpp"
#include "adip/preprocess.hpp"

namespace adip {

using Cycle = std::uint64_t;

struct ArrayConfig {
    std::size_t n = 4;
    /// MAC pipeline stages (>= 1). The PE psum register is the first stage.
    int s_stages = 1;
    /// External shift/add stages; defaults to the mode's reducer depth
    /// (W8: 2, W4: 1, W2: 0). Must not be smaller than that depth.
    std::optional<int> e_stages;
    /// Hide weight loading behind the previous tile's drain. The first load
    /// after reset() is still charged n cycles.
    bool overlap_weight_load = false;
};

/// Origin of the value sitting in a PE input register.
struct InputTag {
    std::int64_t row = -1;  ///< index in the current stream, -1 for a bubble
    std::int64_t col = -1;  ///< element index within the input row
    [[nodiscard]] bool valid() const noexcept { return row >= 0; }
};

/// Shared shifter/accumulator state under one PE column.
struct ColumnReducer {
    std::array<Psum32, 2> stage1_regs{};
    Psum32 stage2_reg = 0;
    std::int64_t stage1_tag = -1;
    std::int64_t stage2_tag = -1;
};

struct OutputRow {
    std::size_t row = 0;
    Cycle cycle = 0;                          ///< cycle on which the row was emitted
    std::vector<Cycle> column_cycles;         ///< per-column emission cycle
    std::vector<std::vector<Psum32>> values;  ///< [matrix][column]
};

struct TileResult {
    std::vector<Matrix<Psum32>> outputs;  ///< one per active matrix
    Cycle cycles = 0;       ///< first input cycle through last emission, inclusive
    Cycle load_cycles = 0;  ///< cycles charged for the weight load
};

class ArraySim {
public:
    ArraySim(ArrayConfig config, PrecisionMode mode);

    /// Zeros every register and the cycle counter.
    void reset();

    /// Switches the operating mode; only valid while the array is drained.
    void set_mode(PrecisionMode mode);

    /// Loads one packed tile row per cycle (n cycles, or none when overlapped).
    /// Throws ShapeError / ModeError on mismatch, PhaseError if rows are in flight.
    void load_weights(const PackedWeightTile& packed);

    /// Advances one clock edge, optionally feeding an input row of n elements.
    /// Any rows completing on this cycle are appended to the collector.
    void step(std::optional<std::span<const Act8>> row);

    /// Streams every row of `a_rows` (rows x n), one per cycle, then drains.
    /// Returns rows in input order. Throws PhaseError before a weight load.
    std::vector<OutputRow> stream(const Matrix<std::int8_t>& a_rows);

    /// load_weights + stream, gathered into nw output matrices.
    TileResult run_tile(const PackedWeightTile& packed, const Matrix<std::int8_t>& a_tile);

    /// Per-cycle CSV: cycle,row,col,input,psum0,psum1,psum2,psum3
    void set_trace(std::ostream* out);

    [[nodiscard]] std::size_t n() const noexcept { return config_.n; }
    [[nodiscard]] Cycle cycle() const noexcept { return cycle_; }
    [[nodiscard]] PrecisionMode mode() const noexcept { return mode_; }
    [[nodiscard]] int s_stages() const noexcept { return config_.s_stages; }
    [[nodiscard]] int e_stages() const noexcept;
    [[nodiscard]] bool weights_loaded() const noexcept { return loaded_; }
    [[nodiscard]] bool drained() const noexcept;

    [[nodiscard]] const PEState& pe(std::size_t r, std::size_t c) const { return grid_(r, c); }
    [[nodiscard]] const InputTag& tag(std::size_t r, std::size_t c) const { return tags_(r, c); }
    [[nodiscard]] const ColumnReducer& reducer(std::size_t c) const { return reducers_.at(c); }

private:
    struct BusWord {
        PsumBus bus{};
        std::int64_t tag = -1;
    };

    void emit(std::size_t col, std::int64_t row, std::span<const Psum32> values);
    void trace_cycle() const;

    ArrayConfig config_;
    PrecisionMode mode_;
    Cycle cycle_ = 0;
    bool loaded_ = false;
    bool ever_loaded_ = false;

    Matrix<PEState> grid_;
    Matrix<PEState> next_grid_;
    Matrix<InputTag> tags_;
    Matrix<InputTag> next_tags_;

    std::vector<std::vector<BusWord>> delay_;  ///< [col][stage], extra output pipeline
    std::vector<ColumnReducer> reducers_;

    std::int64_t next_row_ = 0;
    std::int64_t in_flight_ = 0;  ///< rows entered but not yet complete on every column
    std::vector<OutputRow> collected_;
    std::vector<std::size_t> pending_columns_;
    std::ostream* trace_ = nullptr;
};

}  // namespace adip
