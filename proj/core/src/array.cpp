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

#include "adip/array.hpp"

#include <algorithm>
#include <ostream>
#include <string>

#include "adip/error.hpp"

namespace adip {

ArraySim::ArraySim(ArrayConfig config, PrecisionMode mode) : config_(config), mode_(mode) {
    if (config_.n == 0) throw ShapeError("array size must be >= 1");
    if (config_.s_stages < 1) throw Error("S (MAC pipeline stages) must be >= 1");
    if (config_.e_stages && *config_.e_stages < mode_.reducer_depth()) {
        throw Error("E = " + std::to_string(*config_.e_stages) + " is below the reducer depth of " +
                    mode_.name());
    }
    reset();
}

int ArraySim::e_stages() const noexcept { return config_.e_stages.value_or(mode_.reducer_depth()); }

void ArraySim::reset() {
    const std::size_t n = config_.n;
    PEState blank;
    blank.mode = mode_;
    grid_ = Matrix<PEState>(n, n, blank);
    next_grid_ = grid_;
    tags_ = Matrix<InputTag>(n, n);
    next_tags_ = tags_;
    const int extra = config_.s_stages - 1 + e_stages() - mode_.reducer_depth();
    delay_.assign(n, std::vector<BusWord>(static_cast<std::size_t>(extra)));
    reducers_.assign(n, ColumnReducer{});
    cycle_ = 0;
    loaded_ = false;
    ever_loaded_ = false;
    next_row_ = 0;
    in_flight_ = 0;
    collected_.clear();
    pending_columns_.clear();
}

bool ArraySim::drained() const noexcept { return in_flight_ == 0; }

void ArraySim::set_mode(PrecisionMode mode) {
    if (!drained()) throw PhaseError("mode change while rows are in flight");
    if (config_.e_stages && *config_.e_stages < mode.reducer_depth()) {
        throw Error("E is below the reducer depth of " + mode.name());
    }
    mode_ = mode;
    const Cycle keep = cycle_;
    const bool ever = ever_loaded_;
    reset();
    cycle_ = keep;
    ever_loaded_ = ever;
}

void ArraySim::load_weights(const PackedWeightTile& packed) {
    const std::size_t n = config_.n;
    if (packed.n() != n) {
        throw ShapeError("packed tile is " + std::to_string(packed.n()) + "x" +
                         std::to_string(packed.n()) + ", array is " + std::to_string(n));
    }
    if (!(packed.mode == mode_)) {
        throw ModeError("packed tile mode " + packed.mode.name() + " != array mode " + mode_.name());
    }
    if (!drained()) throw PhaseError("weight load while rows are in flight");

    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) grid_(r, c) = begin_weight_load(grid_(r, c));
    }
    // Weights shift in from the top, one row per cycle; after n cycles row r
    // holds packed row r.
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t r = n - 1; r > 0; --r) {
            for (std::size_t c = 0; c < n; ++c) {
                grid_(r, c) = load_weight(grid_(r, c), grid_(r - 1, c).weight_byte);
            }
        }
        for (std::size_t c = 0; c < n; ++c) {
            grid_(0, c) = load_weight(grid_(0, c), packed.bytes(n - 1 - k, c));
        }
        if (!config_.overlap_weight_load || !ever_loaded_) ++cycle_;
    }

    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            grid_(r, c).input_reg = 0;
            grid_(r, c) = begin_compute(grid_(r, c));
            tags_(r, c) = InputTag{};
        }
    }
    for (auto& line : delay_) std::fill(line.begin(), line.end(), BusWord{});
    std::fill(reducers_.begin(), reducers_.end(), ColumnReducer{});
    loaded_ = true;
    ever_loaded_ = true;
}

void ArraySim::emit(std::size_t col, std::int64_t row, std::span<const Psum32> values) {
    auto& out = collected_.at(static_cast<std::size_t>(row));
    for (std::size_t t = 0; t < out.values.size(); ++t) out.values[t][col] = values[t];
    out.column_cycles[col] = cycle_;
    auto& pending = pending_columns_.at(static_cast<std::size_t>(row));
    if (--pending == 0) {
        out.cycle = *std::max_element(out.column_cycles.begin(), out.column_cycles.end());
        --in_flight_;
    }
}

void ArraySim::step(std::optional<std::span<const Act8>> row) {
    const std::size_t n = config_.n;
    if (!loaded_) throw PhaseError("streaming before weight load");
    if (row && row->size() != n) {
        throw ShapeError("input row has " + std::to_string(row->size()) + " elements, array is " +
                         std::to_string(n));
    }
    ++cycle_;

    std::int64_t entering = -1;
    if (row) {
        entering = next_row_++;
        OutputRow out;
        out.row = static_cast<std::size_t>(entering);
        out.column_cycles.assign(n, 0);
        out.values.assign(static_cast<std::size_t>(mode_.nw()), std::vector<Psum32>(n, 0));
        collected_.push_back(std::move(out));
        pending_columns_.push_back(n);
        ++in_flight_;
    }

    // PE grid: every PE reads only registers latched on the previous edge.
    const PsumBus zero{};
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            Act8 in = 0;
            InputTag tag;
            const PsumBus* psums = &zero;
            if (r == 0) {
                if (row) {
                    in = (*row)[c];
                    tag = InputTag{entering, static_cast<std::int64_t>(c)};
                }
            } else {
                const std::size_t src = (c + 1) % n;
                in = grid_(r - 1, src).input_reg;
                tag = tags_(r - 1, src);
                psums = &grid_(r - 1, c).psum_regs;
            }
            next_grid_(r, c) = pe_step(grid_(r, c), in, *psums).state;
            next_tags_(r, c) = tag;
        }
    }

    // Column output paths, again from previous-edge registers.
    const int depth = mode_.reducer_depth();
    const std::size_t nw = static_cast<std::size_t>(mode_.nw());
    for (std::size_t c = 0; c < n; ++c) {
        const BusWord bottom{grid_(n - 1, c).psum_regs, tags_(n - 1, c).row};
        auto& line = delay_[c];
        const BusWord reducer_in = line.empty() ? bottom : line.back();
        for (std::size_t k = line.size(); k-- > 1;) line[k] = line[k - 1];
        if (!line.empty()) line.front() = bottom;

        auto& red = reducers_[c];
        if (depth >= 2) {
            red.stage2_reg = static_cast<Psum32>(static_cast<long long>(red.stage1_regs[0]) +
                                                 16LL * red.stage1_regs[1]);
            red.stage2_tag = red.stage1_tag;
        }
        if (depth >= 1) {
            const auto& b = reducer_in.bus;
            red.stage1_regs = {static_cast<Psum32>(b[0] + 4LL * b[1]),
                               static_cast<Psum32>(b[2] + 4LL * b[3])};
            red.stage1_tag = reducer_in.tag;
        }

        if (depth == 2) {
            if (red.stage2_tag >= 0) emit(c, red.stage2_tag, std::span<const Psum32>(&red.stage2_reg, 1));
        } else if (depth == 1) {
            if (red.stage1_tag >= 0) emit(c, red.stage1_tag, std::span<const Psum32>(red.stage1_regs).first(nw));
        } else {
            const BusWord tap = line.empty()
                                    ? BusWord{next_grid_(n - 1, c).psum_regs, next_tags_(n - 1, c).row}
                                    : line.back();
            if (tap.tag >= 0) emit(c, tap.tag, std::span<const Psum32>(tap.bus).first(nw));
        }
    }

    std::swap(grid_, next_grid_);
    std::swap(tags_, next_tags_);
    if (trace_) trace_cycle();
}

std::vector<OutputRow> ArraySim::stream(const Matrix<std::int8_t>& a_rows) {
    if (!loaded_) throw PhaseError("streaming before weight load");
    if (a_rows.cols() != config_.n) {
        throw ShapeError("input rows have " + std::to_string(a_rows.cols()) + " columns, array is " +
                         std::to_string(config_.n));
    }
    if (!drained()) throw PhaseError("stream started while rows are in flight");
    collected_.clear();
    pending_columns_.clear();
    next_row_ = 0;

    for (std::size_t i = 0; i < a_rows.rows(); ++i) {
        const auto r = a_rows.row(i);
        step(std::span<const Act8>(r.data(), r.size()));
    }
    while (!drained()) step(std::nullopt);
    return std::move(collected_);
}

TileResult ArraySim::run_tile(const PackedWeightTile& packed, const Matrix<std::int8_t>& a_tile) {
    const Cycle before_load = cycle_;
    load_weights(packed);
    TileResult result;
    result.load_cycles = cycle_ - before_load;

    const Cycle first_input = cycle_ + 1;
    const auto rows = stream(a_tile);
    const std::size_t n = config_.n;
    result.outputs.assign(static_cast<std::size_t>(mode_.nw()), Matrix<Psum32>(a_tile.rows(), n));
    Cycle last = first_input - 1;
    for (const auto& out : rows) {
        for (std::size_t t = 0; t < out.values.size(); ++t) {
            for (std::size_t c = 0; c < n; ++c) result.outputs[t](out.row, c) = out.values[t][c];
        }
        last = std::max(last, out.cycle);
    }
    result.cycles = last - (first_input - 1);
    return result;
}

void ArraySim::set_trace(std::ostream* out) {
    trace_ = out;
    if (trace_) *trace_ << "cycle,row,col,input,psum0,psum1,psum2,psum3\n";
}

void ArraySim::trace_cycle() const {
    const std::size_t n = config_.n;
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            const auto& pe = grid_(r, c);
            *trace_ << cycle_ << ',' << r << ',' << c << ',' << static_cast<int>(pe.input_reg);
            for (const auto p : pe.psum_regs) *trace_ << ',' << p;
            *trace_ << '\n';
        }
    }
}

}  // namespace adip
