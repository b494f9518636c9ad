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

#include "adip/mode.hpp"

#include <algorithm>
#include <cctype>

#include "adip/error.hpp"

namespace adip {

int interleave_factor(Precision p) noexcept {
    switch (p) {
        case Precision::W8: return 1;
        case Precision::W4: return 2;
        case Precision::W2: return 4;
    }
    return 1;
}

int weight_bits(Precision p) noexcept { return 8 / interleave_factor(p); }

std::string_view to_string(Precision p) noexcept {
    switch (p) {
        case Precision::W8: return "w8";
        case Precision::W4: return "w4";
        case Precision::W2: return "w2";
    }
    return "?";
}

Precision precision_for_bits(int bits) {
    switch (bits) {
        case 8: return Precision::W8;
        case 4: return Precision::W4;
        case 2: return Precision::W2;
        default: throw ModeError("unsupported weight width " + std::to_string(bits));
    }
}

Precision parse_precision(std::string_view s) {
    std::string lower(s);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (lower == "w8" || lower == "8") return Precision::W8;
    if (lower == "w4" || lower == "4") return Precision::W4;
    if (lower == "w2" || lower == "2") return Precision::W2;
    throw ModeError("unknown precision mode '" + std::string(s) + "'");
}

PrecisionMode::PrecisionMode(Precision tag, int nw) : tag_(tag), nw_(nw) {
    const int r = interleave_factor(tag);
    if (nw < 1 || nw > r) {
        throw ModeError("mode " + std::string(to_string(tag)) + " packs 1.." + std::to_string(r) +
                        " matrices, got nw=" + std::to_string(nw));
    }
}

PrecisionMode PrecisionMode::full(Precision tag) { return {tag, interleave_factor(tag)}; }

PrecisionMode PrecisionMode::for_weight_bits(int bits, int nw) {
    const Precision p = precision_for_bits(bits);
    return {p, nw < 0 ? interleave_factor(p) : nw};
}

int PrecisionMode::interleave() const noexcept { return interleave_factor(tag_); }

bool PrecisionMode::slot_signed(int g) const noexcept {
    const int slots_per_field = 4 / interleave();
    return (g % slots_per_field) == slots_per_field - 1;
}

int PrecisionMode::reducer_depth() const noexcept {
    switch (tag_) {
        case Precision::W8: return 2;
        case Precision::W4: return 1;
        case Precision::W2: return 0;
    }
    return 0;
}

std::string PrecisionMode::name() const {
    return std::string(to_string(tag_)) + "/nw" + std::to_string(nw_);
}

}  // namespace adip
