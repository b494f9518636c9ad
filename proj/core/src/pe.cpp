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

#include "adip/pe.hpp"

#include <limits>

#include "adip/error.hpp"

namespace adip {

int weight_slot(std::uint8_t weight_byte, PrecisionMode mode, int g) noexcept {
    const unsigned bits = (static_cast<unsigned>(weight_byte) >> (2 * g)) & 0x3u;
    return mode.slot_signed(g) ? sign_extend(bits, 2) : static_cast<int>(bits);
}

GroupOutputs group_multiply(Act8 input, std::uint8_t weight_byte, PrecisionMode mode) noexcept {
    // Input digits: three unsigned, the top one signed.
    const unsigned in_bits = encode_bits(input, 8);
    std::array<Subword2, 4> in_digits{};
    for (int j = 0; j < 4; ++j) {
        const unsigned d = (in_bits >> (2 * j)) & 0x3u;
        in_digits[j] = Subword2{static_cast<std::int8_t>(j == 3 ? sign_extend(d, 2) : static_cast<int>(d)),
                                j == 3};
    }

    GroupOutputs out;
    for (int g = 0; g < 4; ++g) {
        const Subword2 w{static_cast<std::int8_t>(weight_slot(weight_byte, mode, g)), mode.slot_signed(g)};
        int acc = 0;
        for (int j = 0; j < 4; ++j) acc += mul2(in_digits[j], w) * (1 << (2 * j));
        out.g[g] = acc;
    }
    return out;
}

std::vector<long long> recombine(const GroupOutputs& groups, PrecisionMode mode) {
    const auto& g = groups.g;
    switch (mode.tag()) {
        case Precision::W8:
            return {g[0] + 4LL * g[1] + 16LL * g[2] + 64LL * g[3]};
        case Precision::W4:
            return {g[0] + 4LL * g[1], g[2] + 4LL * g[3]};
        case Precision::W2:
            return {g[0], g[1], g[2], g[3]};
    }
    return {};
}

PEStepResult pe_step(const PEState& state, Act8 input_in, const PsumBus& psums_in) {
    if (state.phase != Phase::Compute) throw PhaseError("pe_step issued outside the compute phase");
    const GroupOutputs groups = group_multiply(input_in, state.weight_byte, state.mode);

    PEStepResult result;
    result.input_out = state.input_reg;
    for (int g = 0; g < 4; ++g) {
        const long long sum = static_cast<long long>(psums_in[g]) + groups.g[g];
        if (sum > std::numeric_limits<Psum32>::max() || sum < std::numeric_limits<Psum32>::min()) {
            throw Error("psum overflow in PE");
        }
        result.psums_out[g] = static_cast<Psum32>(sum);
    }
    result.state = state;
    result.state.input_reg = input_in;
    result.state.psum_regs = result.psums_out;
    return result;
}

PEState load_weight(const PEState& state, std::uint8_t byte) {
    if (state.phase == Phase::Compute) throw PhaseError("weight load during compute phase");
    PEState next = state;
    next.weight_byte = byte;
    next.psum_regs = {};
    return next;
}

PEState begin_compute(PEState state) noexcept {
    state.phase = Phase::Compute;
    return state;
}

PEState begin_weight_load(PEState state) noexcept {
    state.phase = Phase::WeightLoad;
    return state;
}

}  // namespace adip
