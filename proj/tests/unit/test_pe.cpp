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

#include <gtest/gtest.h>

#include "adip/error.hpp"
#include "adip/pe.hpp"
#include "adip/preprocess.hpp"

namespace adip {
namespace {

PEState computing(std::uint8_t byte, PrecisionMode mode) {
    PEState s;
    s.mode = mode;
    return begin_compute(load_weight(s, byte));
}

TEST(PE, GroupMultiplyW8Example) {
    const auto g = group_multiply(5, 7, PrecisionMode::w8());
    EXPECT_EQ(g, (GroupOutputs{{15, 5, 0, 0}}));
    EXPECT_EQ(recombine(g, PrecisionMode::w8()), (std::vector<long long>{35}));
}

TEST(PE, GroupMultiplyW4Example) {
    const auto mode = PrecisionMode::full(Precision::W4);
    const auto g = group_multiply(10, 0xE3, mode);
    EXPECT_EQ(g, (GroupOutputs{{30, 0, 20, -10}}));
    EXPECT_EQ(recombine(g, mode), (std::vector<long long>{30, -20}));
}

TEST(PE, WeightSlots) {
    EXPECT_EQ(weight_slot(0xC0, PrecisionMode::w8(), 3), -1);
    EXPECT_EQ(weight_slot(0xC0, PrecisionMode::full(Precision::W2), 3), -1);
    EXPECT_EQ(weight_slot(0x03, PrecisionMode::w8(), 0), 3);
    EXPECT_EQ(weight_slot(0x03, PrecisionMode::full(Precision::W2), 0), -1);
}

TEST(PE, ExhaustiveRecombination) {
    for (const auto precision : {Precision::W8, Precision::W4, Precision::W2}) {
        const auto mode = PrecisionMode::full(precision);
        for (int in = -128; in <= 127; ++in) {
            for (int byte = 0; byte < 256; ++byte) {
                const auto b = static_cast<std::uint8_t>(byte);
                const auto vals = recombine(group_multiply(static_cast<Act8>(in), b, mode), mode);
                ASSERT_EQ(vals.size(), static_cast<std::size_t>(mode.interleave()));
                for (int t = 0; t < mode.interleave(); ++t) {
                    ASSERT_EQ(vals[static_cast<std::size_t>(t)], in * unpack_field(b, precision, t))
                        << mode.name() << " in=" << in << " byte=" << byte << " slot=" << t;
                }
            }
        }
    }
}

TEST(PE, StepAccumulatesAndForwards) {
    auto s = computing(7, PrecisionMode::w8());
    const auto r1 = pe_step(s, 5, PsumBus{1, 2, 3, 4});
    EXPECT_EQ(r1.psums_out, (PsumBus{16, 7, 3, 4}));
    EXPECT_EQ(r1.input_out, 0);
    EXPECT_EQ(r1.state.input_reg, 5);
    const auto r2 = pe_step(r1.state, -1, PsumBus{});
    EXPECT_EQ(r2.input_out, 5);
}

TEST(PE, Linearity) {
    const auto mode = PrecisionMode::full(Precision::W4);
    for (int a = -64; a < 64; a += 7) {
        for (int b = -64; b < 64; b += 5) {
            const auto ga = group_multiply(static_cast<Act8>(a), 0x5A, mode);
            const auto gb = group_multiply(static_cast<Act8>(b), 0x5A, mode);
            const auto gs = group_multiply(static_cast<Act8>(a + b), 0x5A, mode);
            for (int g = 0; g < 4; ++g) EXPECT_EQ(gs.g[g], ga.g[g] + gb.g[g]);
        }
    }
}

TEST(PE, PhaseErrors) {
    PEState idle;
    EXPECT_THROW((void)pe_step(idle, 1, PsumBus{}), PhaseError);
    const auto active = computing(1, PrecisionMode::w8());
    EXPECT_THROW((void)load_weight(active, 2), PhaseError);
    const auto reloaded = load_weight(begin_weight_load(pe_step(active, 3, PsumBus{}).state), 2);
    EXPECT_EQ(reloaded.weight_byte, 2);
    EXPECT_EQ(reloaded.psum_regs, PsumBus{});
}

}  // namespace
}  // namespace adip
