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
 * @file analytic.hpp
 * @brief Closed-form latency and throughput of the array.
 *
 *   dmul       = ceil(OW1 * OW2 / (M * MW^2))
 *   latency    = N * dmul + N + S + E - 2
 *   parallel   = ceil(M * MW^2 / (OW1 * OW2))
 *   throughput = 2 * parallel * N^3 / latency          [ops/cycle]
 *   peak       = 2 * parallel * N^2                    [ops/cycle, no fill]
 */

#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace adip {

struct AnalyticParams {
    std::int64_t n = 64;       ///< array rows/columns
    std::int64_t m = 16;       ///< 2-bit multipliers per PE
    std::int64_t mw = 2;       ///< multiplier operand width
    std::int64_t ow_first = 8; ///< first operand width
    std::int64_t ow_second = 8;
    std::int64_t s = 1;        ///< MAC pipeline stages
    std::int64_t e = 2;        ///< external shift/add stages

    /// Throws Error on non-positive fields or odd operand widths.
    void validate() const;
};

[[nodiscard]] std::int64_t dmul_latency(const AnalyticParams& p);
[[nodiscard]] std::int64_t adip_latency(const AnalyticParams& p);
/// Products computed per PE per D-MUL round.
[[nodiscard]] std::int64_t parallel_factor(const AnalyticParams& p);
[[nodiscard]] double adip_ops_per_cycle(const AnalyticParams& p);
[[nodiscard]] double adip_throughput(const AnalyticParams& p, double clock_hz);
[[nodiscard]] double peak_throughput(const AnalyticParams& p, double clock_hz);

struct SweepRow {
    std::int64_t m = 0;
    std::int64_t ow_second = 0;
    std::int64_t dmul_cycles = 0;
    std::int64_t latency_cycles = 0;
    double throughput_tops = 0.0;
};

/// Rows ordered by precision (8b x 8b, 8b x 4b, 8b x 2b), then M ascending.
[[nodiscard]] std::vector<SweepRow> sweep_multipliers(std::int64_t n = 64,
                                                      const std::vector<std::int64_t>& ms = {2, 4, 8, 16},
                                                      const std::vector<std::int64_t>& second_widths = {8, 4, 2},
                                                      std::int64_t s = 1, std::int64_t e = 2,
                                                      double clock_hz = 1e9);

/// Header `M,precision,dmul_cycles,latency_cycles,throughput_tops`; precision as "8x4".
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

}  // namespace adip
