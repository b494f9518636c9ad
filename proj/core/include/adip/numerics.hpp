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
 * @file numerics.hpp
 * @brief Integer operand types and 2-bit subword arithmetic.
 *
 * Every operand in the array is a two's-complement integer of width 2, 4 or 8
 * bits. A k-bit value is decomposed little-endian into k/2 radix-4 digits:
 * the lower digits are unsigned in [0,3], the top digit is signed in [-2,1].
 *
 *     x = u0 + 4*u1 + ... + 4^(k/2-2)*u_{k/2-2} + 4^(k/2-1)*s_top
 *
 * The product of two such values is then the shifted sum of the 2-bit
 * digit products, which is what the PE's sixteen 2-bit multipliers compute.
 */

#pragma once

#include <array>
#include <cstdint>
#include <span>

#include "adip/error.hpp"

namespace adip {

using Act8 = std::int8_t;
using Psum32 = std::int32_t;

/// True if `width` is one of the supported operand widths.
[[nodiscard]] constexpr bool valid_width(int width) noexcept {
    return width == 2 || width == 4 || width == 8;
}

[[nodiscard]] constexpr int min_value(int width) noexcept { return -(1 << (width - 1)); }
[[nodiscard]] constexpr int max_value(int width) noexcept { return (1 << (width - 1)) - 1; }

[[nodiscard]] constexpr bool fits_width(int value, int width) noexcept {
    return value >= min_value(width) && value <= max_value(width);
}

/// Interprets the low `width` bits of `bits` as a two's-complement integer.
[[nodiscard]] constexpr int sign_extend(unsigned bits, int width) noexcept {
    const unsigned mask = (1u << width) - 1u;
    const unsigned v = bits & mask;
    const unsigned sign = 1u << (width - 1);
    return static_cast<int>(v ^ sign) - static_cast<int>(sign);
}

/// Low `width` bits of the two's-complement encoding of `value`.
[[nodiscard]] constexpr unsigned encode_bits(int value, int width) noexcept {
    return static_cast<unsigned>(value) & ((1u << width) - 1u);
}

/// A signed weight value tagged with its declared bit width.
struct WeightField {
    int value = 0;
    int width = 8;

    /// Validates width and range.
    static WeightField make(int value, int width);

    friend bool operator==(const WeightField&, const WeightField&) = default;
};

/// One radix-4 digit. Only the top digit of a field is signed.
struct Subword2 {
    std::int8_t value = 0;
    bool is_signed = false;

    /// Validates the digit range for its signedness.
    static Subword2 make(int value, bool is_signed);

    friend bool operator==(const Subword2&, const Subword2&) = default;
};

/// Fixed-capacity list of up to four digits (an 8-bit value has four).
class Subwords {
public:
    Subwords() = default;

    void push_back(Subword2 s) {
        if (count_ == data_.size()) throw WidthError("more than four subwords");
        data_[count_++] = s;
    }

    [[nodiscard]] std::size_t size() const noexcept { return count_; }
    [[nodiscard]] const Subword2& operator[](std::size_t i) const noexcept { return data_[i]; }
    [[nodiscard]] const Subword2* begin() const noexcept { return data_.data(); }
    [[nodiscard]] const Subword2* end() const noexcept { return data_.data() + count_; }
    [[nodiscard]] std::span<const Subword2> view() const noexcept { return {data_.data(), count_}; }

private:
    std::array<Subword2, 4> data_{};
    std::size_t count_ = 0;
};

/// Splits a signed k-bit value into k/2 little-endian radix-4 digits.
/// Throws WidthError for k outside {2,4,8} or x outside the k-bit range.
[[nodiscard]] Subwords split_subwords(int x, int k);

/// Exact product of two 2-bit digits; |result| <= 9.
[[nodiscard]] constexpr int mul2(Subword2 a, Subword2 b) noexcept { return a.value * b.value; }

/// Inverse of split_subwords. Throws WidthError on a length/width mismatch
/// or a digit outside its signed/unsigned range.
[[nodiscard]] int recompose(std::span<const Subword2> subwords, int k);

/// Full product built only from mul2 digit products and shifts.
[[nodiscard]] int dc_multiply(int a, int a_width, int b, int b_width);

}  // namespace adip
