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

#include "adip/numerics.hpp"

#include <string>

namespace adip {

namespace {

void require_width(int k) {
    if (!valid_width(k)) {
        throw WidthError("invalid operand width " + std::to_string(k) + " (expected 2, 4 or 8)");
    }
}

}  // namespace

WeightField WeightField::make(int value, int width) {
    require_width(width);
    if (!fits_width(value, width)) {
        throw WidthError("weight " + std::to_string(value) + " does not fit in " +
                         std::to_string(width) + " bits");
    }
    return WeightField{value, width};
}

Subword2 Subword2::make(int value, bool is_signed) {
    const int lo = is_signed ? -2 : 0;
    const int hi = is_signed ? 1 : 3;
    if (value < lo || value > hi) {
        throw WidthError("subword value " + std::to_string(value) + " out of range");
    }
    return Subword2{static_cast<std::int8_t>(value), is_signed};
}

Subwords split_subwords(int x, int k) {
    require_width(k);
    if (!fits_width(x, k)) {
        throw WidthError("value " + std::to_string(x) + " does not fit in " + std::to_string(k) +
                         " bits");
    }
    const unsigned bits = encode_bits(x, k);
    const int digits = k / 2;
    Subwords out;
    for (int i = 0; i < digits; ++i) {
        const unsigned d = (bits >> (2 * i)) & 0x3u;
        const bool top = (i == digits - 1);
        out.push_back(Subword2{static_cast<std::int8_t>(top ? sign_extend(d, 2) : static_cast<int>(d)),
                               top});
    }
    return out;
}

int recompose(std::span<const Subword2> subwords, int k) {
    require_width(k);
    const auto digits = static_cast<std::size_t>(k / 2);
    if (subwords.size() != digits) {
        throw WidthError("expected " + std::to_string(digits) + " subwords for width " +
                         std::to_string(k));
    }
    int value = 0;
    for (std::size_t i = 0; i < digits; ++i) {
        const bool top = (i + 1 == digits);
        // Re-validate against the position's signedness, not the stored flag.
        const Subword2 s = Subword2::make(subwords[i].value, top);
        value += s.value * (1 << (2 * i));
    }
    return value;
}

int dc_multiply(int a, int a_width, int b, int b_width) {
    const Subwords as = split_subwords(a, a_width);
    const Subwords bs = split_subwords(b, b_width);
    int sum = 0;
    for (std::size_t i = 0; i < as.size(); ++i) {
        for (std::size_t j = 0; j < bs.size(); ++j) {
            sum += mul2(as[i], bs[j]) * (1 << (2 * (i + j)));
        }
    }
    return sum;
}

}  // namespace adip
