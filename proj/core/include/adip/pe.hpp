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
 * @file pe.hpp
 * @brief Functional model of one adaptive-precision processing element.
 *
 * The PE holds an 8-bit stationary weight word, an 8-bit input register and
 * four 32-bit psum registers. Sixteen 2-bit multipliers are arranged in four
 * groups; group g multiplies the four digits of the input by weight slot
 * bits [2g, 2g+2) and sums them with shifts, so its output is the exact
 * product input * slot_g. Which slots are signed depends on the mode:
 *
 *     W8: slot 3          W4: slots 1 and 3          W2: all slots
 *
 * Group accumulation is combinational; only the PE registers are clocked.
 */

#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "adip/mode.hpp"
#include "adip/numerics.hpp"

namespace adip {

using PsumBus = std::array<Psum32, 4>;

enum class Phase { WeightLoad, Compute };

struct GroupOutputs {
    std::array<int, 4> g{};
    friend bool operator==(const GroupOutputs&, const GroupOutputs&) = default;
};

struct PEState {
    std::uint8_t weight_byte = 0;
    Act8 input_reg = 0;
    PsumBus psum_regs{};
    PrecisionMode mode = PrecisionMode::w8();
    Phase phase = Phase::WeightLoad;
};

struct PEStepResult {
    PEState state;
    Act8 input_out = 0;  ///< the input registered on the previous cycle
    PsumBus psums_out{};
};

/// Signed value of 2-bit weight slot g under `mode`.
[[nodiscard]] int weight_slot(std::uint8_t weight_byte, PrecisionMode mode, int g) noexcept;

[[nodiscard]] GroupOutputs group_multiply(Act8 input, std::uint8_t weight_byte, PrecisionMode mode) noexcept;

/// Shift-adds the four group outputs into one product per field:
/// W8 -> 1 value, W4 -> 2 values, W2 -> 4 values.
[[nodiscard]] std::vector<long long> recombine(const GroupOutputs& groups, PrecisionMode mode);

/// One clock edge. Throws PhaseError outside the compute phase and Error on
/// 32-bit psum overflow (unreachable for 8-bit operands and n <= 64).
[[nodiscard]] PEStepResult pe_step(const PEState& state, Act8 input_in, const PsumBus& psums_in);

/// Replaces the stationary weight and clears the psum registers.
/// Throws PhaseError if the PE is in the compute phase.
[[nodiscard]] PEState load_weight(const PEState& state, std::uint8_t byte);

[[nodiscard]] PEState begin_compute(PEState state) noexcept;
[[nodiscard]] PEState begin_weight_load(PEState state) noexcept;

}  // namespace adip
