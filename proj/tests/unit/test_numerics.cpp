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
#include "adip/mode.hpp"
#include "adip/numerics.hpp"

namespace adip {
namespace {

std::vector<int> digits_of(const Subwords& s) {
    std::vector<int> out;
    for (const auto& d : s) out.push_back(d.value);
    return out;
}

TEST(Numerics, SplitExamples) {
    EXPECT_EQ(digits_of(split_subwords(-128, 8)), (std::vector<int>{0, 0, 0, -2}));
    EXPECT_EQ(digits_of(split_subwords(127, 8)), (std::vector<int>{3, 3, 3, 1}));
    EXPECT_EQ(digits_of(split_subwords(-1, 8)), (std::vector<int>{3, 3, 3, -1}));
    EXPECT_EQ(digits_of(split_subwords(-2, 4)), (std::vector<int>{2, -1}));
    EXPECT_EQ(digits_of(split_subwords(1, 2)), (std::vector<int>{1}));
    EXPECT_EQ(digits_of(split_subwords(-2, 2)), (std::vector<int>{-2}));
}

TEST(Numerics, OnlyTopDigitSigned) {
    const auto s = split_subwords(-77, 8);
    ASSERT_EQ(s.size(), 4u);
    EXPECT_FALSE(s[0].is_signed);
    EXPECT_FALSE(s[2].is_signed);
    EXPECT_TRUE(s[3].is_signed);
}

TEST(Numerics, RecomposeRoundTripAllWidths) {
    for (const int k : {2, 4, 8}) {
        for (int x = min_value(k); x <= max_value(k); ++x) {
            const auto s = split_subwords(x, k);
            EXPECT_EQ(recompose(s.view(), k), x) << "k=" << k << " x=" << x;
        }
    }
}

TEST(Numerics, DcMultiplyExhaustive8x8) {
    for (int a = -128; a <= 127; ++a) {
        for (int b = -128; b <= 127; ++b) ASSERT_EQ(dc_multiply(a, 8, b, 8), a * b) << a << "*" << b;
    }
}

TEST(Numerics, DcMultiplyMixedWidths) {
    for (const int bw : {2, 4}) {
        for (int a = -128; a <= 127; ++a) {
            for (int b = min_value(bw); b <= max_value(bw); ++b) ASSERT_EQ(dc_multiply(a, 8, b, bw), a * b);
        }
    }
}

TEST(Numerics, Mul2Bounds) {
    EXPECT_EQ(mul2(Subword2::make(3, false), Subword2::make(3, false)), 9);
    EXPECT_EQ(mul2(Subword2::make(-2, true), Subword2::make(-2, true)), 4);
    EXPECT_EQ(mul2(Subword2::make(3, false), Subword2::make(-2, true)), -6);
}

TEST(Numerics, InvalidWidthAndRange) {
    EXPECT_THROW((void)split_subwords(0, 3), WidthError);
    EXPECT_THROW((void)split_subwords(0, 16), WidthError);
    EXPECT_THROW((void)split_subwords(8, 4), WidthError);
    EXPECT_THROW((void)split_subwords(-3, 2), WidthError);
    EXPECT_THROW((void)WeightField::make(2, 2), WidthError);
    EXPECT_THROW((void)WeightField::make(0, 6), WidthError);
    EXPECT_THROW((void)Subword2::make(-1, false), WidthError);
    EXPECT_THROW((void)Subword2::make(2, true), WidthError);
    EXPECT_EQ(WeightField::make(-8, 4).value, -8);
}

TEST(Numerics, RecomposeRejectsMalformedLists) {
    const auto s = split_subwords(5, 8);
    EXPECT_THROW((void)recompose(s.view(), 4), WidthError);
    // Unsigned digit 3 in the signed top position is out of range.
    const std::array<Subword2, 2> bad{Subword2{1, false}, Subword2{3, false}};
    EXPECT_THROW((void)recompose(bad, 4), WidthError);
}

TEST(Numerics, SignExtendAndEncode) {
    EXPECT_EQ(sign_extend(0b11, 2), -1);
    EXPECT_EQ(sign_extend(0b10, 2), -2);
    EXPECT_EQ(sign_extend(0xE, 4), -2);
    EXPECT_EQ(sign_extend(0x80, 8), -128);
    EXPECT_EQ(encode_bits(-2, 4), 0xEu);
    EXPECT_EQ(encode_bits(-1, 2), 0x3u);
}

TEST(Mode, InterleaveFactorsAndNames) {
    EXPECT_EQ(PrecisionMode::full(Precision::W8).interleave(), 1);
    EXPECT_EQ(PrecisionMode::full(Precision::W4).interleave(), 2);
    EXPECT_EQ(PrecisionMode::full(Precision::W2).interleave(), 4);
    EXPECT_EQ(PrecisionMode(Precision::W2, 3).name(), "w2/nw3");
    EXPECT_EQ(PrecisionMode::for_weight_bits(4).nw(), 2);
    EXPECT_EQ(PrecisionMode::full(Precision::W4).field_width(), 4);
}

TEST(Mode, ReducerDepth) {
    EXPECT_EQ(PrecisionMode::w8().reducer_depth(), 2);
    EXPECT_EQ(PrecisionMode::full(Precision::W4).reducer_depth(), 1);
    EXPECT_EQ(PrecisionMode::full(Precision::W2).reducer_depth(), 0);
}

TEST(Mode, SlotSignedness) {
    const auto w8 = PrecisionMode::w8();
    const auto w4 = PrecisionMode::full(Precision::W4);
    const auto w2 = PrecisionMode::full(Precision::W2);
    EXPECT_EQ((std::array{w8.slot_signed(0), w8.slot_signed(1), w8.slot_signed(2), w8.slot_signed(3)}),
              (std::array{false, false, false, true}));
    EXPECT_EQ((std::array{w4.slot_signed(0), w4.slot_signed(1), w4.slot_signed(2), w4.slot_signed(3)}),
              (std::array{false, true, false, true}));
    for (int g = 0; g < 4; ++g) EXPECT_TRUE(w2.slot_signed(g));
}

TEST(Mode, RejectsBadNw) {
    EXPECT_THROW(PrecisionMode(Precision::W8, 2), ModeError);
    EXPECT_THROW(PrecisionMode(Precision::W4, 3), ModeError);
    EXPECT_THROW(PrecisionMode(Precision::W2, 0), ModeError);
    EXPECT_THROW(PrecisionMode(Precision::W2, 5), ModeError);
    EXPECT_NO_THROW(PrecisionMode(Precision::W2, 3));
}

TEST(Mode, Parse) {
    EXPECT_EQ(parse_precision("W4"), Precision::W4);
    EXPECT_EQ(parse_precision("2"), Precision::W2);
    EXPECT_THROW((void)parse_precision("w3"), ModeError);
    EXPECT_THROW((void)precision_for_bits(6), ModeError);
    EXPECT_EQ(to_string(Precision::W8), "w8");
}

}  // namespace
}  // namespace adip
