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

#pragma once

#include <string>
#include <string_view>

namespace adip {

/// Weight precision of the array (activations are always 8-bit).
enum class Precision { W8, W4, W2 };

/// Operating mode: weight precision plus the number of weight matrices
/// packed into each 8-bit weight word.
///
///   W8: r = 1, one 8-bit field
///   W4: r = 2, two 4-bit fields
///   W2: r = 4, four 2-bit fields (nw = 3 is the fused Q/K/V layout)
class PrecisionMode {
public:
    /// Throws ModeError unless 1 <= nw <= r.
    PrecisionMode(Precision tag, int nw);

    static PrecisionMode w8() { return {Precision::W8, 1}; }
    /// Mode with every slot populated (nw = r).
    static PrecisionMode full(Precision tag);
    /// The fully populated mode for a weight width of 8, 4 or 2 bits.
    static PrecisionMode for_weight_bits(int bits, int nw = -1);

    [[nodiscard]] Precision tag() const noexcept { return tag_; }
    [[nodiscard]] int nw() const noexcept { return nw_; }
    [[nodiscard]] int interleave() const noexcept;
    [[nodiscard]] int field_width() const noexcept { return 8 / interleave(); }

    /// Signedness of 2-bit weight slot g in [0,4): true for the top digit of each field.
    [[nodiscard]] bool slot_signed(int g) const noexcept;

    /// Shift/add stages between the PE column output and the selected tap.
    [[nodiscard]] int reducer_depth() const noexcept;

    [[nodiscard]] std::string name() const;

    friend bool operator==(const PrecisionMode&, const PrecisionMode&) = default;

private:
    Precision tag_;
    int nw_;
};

[[nodiscard]] int interleave_factor(Precision p) noexcept;
[[nodiscard]] int weight_bits(Precision p) noexcept;
[[nodiscard]] std::string_view to_string(Precision p) noexcept;
/// Accepts "w8"/"w4"/"w2" (case-insensitive) or "8"/"4"/"2".
[[nodiscard]] Precision parse_precision(std::string_view s);
[[nodiscard]] Precision precision_for_bits(int bits);

}  // namespace adip
