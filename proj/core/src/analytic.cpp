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

#include "adip/analytic.hpp"

#include <iomanip>
#include <ostream>

#include "adip/error.hpp"

namespace adip {

namespace {

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return (a + b - 1) / b; }

}  // namespace

void AnalyticParams::validate() const {
    if (n <= 0 || m <= 0 || mw <= 0 || ow_first <= 0 || ow_second <= 0 || s <= 0 || e < 0) {
        throw Error("analytic parameters must be positive");
    }
    if (ow_first % 2 != 0 || ow_second % 2 != 0) throw Error("operand widths must be multiples of 2");
}

std::int64_t dmul_latency(const AnalyticParams& p) {
    p.validate();
    return ceil_div(p.ow_first * p.ow_second, p.m * p.mw * p.mw);
}

std::int64_t adip_latency(const AnalyticParams& p) { return p.n * dmul_latency(p) + p.n + p.s + p.e - 2; }

std::int64_t parallel_factor(const AnalyticParams& p) {
    p.validate();
    return ceil_div(p.m * p.mw * p.mw, p.ow_first * p.ow_second);
}

double adip_ops_per_cycle(const AnalyticParams& p) {
    const double ops = 2.0 * static_cast<double>(parallel_factor(p)) * static_cast<double>(p.n * p.n * p.n);
    return ops / static_cast<double>(adip_latency(p));
}

double adip_throughput(const AnalyticParams& p, double clock_hz) { return adip_ops_per_cycle(p) * clock_hz; }

double peak_throughput(const AnalyticParams& p, double clock_hz) {
    return 2.0 * static_cast<double>(parallel_factor(p)) * static_cast<double>(p.n * p.n) * clock_hz;
}

std::vector<SweepRow> sweep_multipliers(std::int64_t n, const std::vector<std::int64_t>& ms,
                                        const std::vector<std::int64_t>& second_widths, std::int64_t s,
                                        std::int64_t e, double clock_hz) {
    std::vector<SweepRow> rows;
    for (const auto w : second_widths) {
        for (const auto m : ms) {
            const AnalyticParams p{n, m, 2, 8, w, s, e};
            rows.push_back({m, w, dmul_latency(p), adip_latency(p), adip_throughput(p, clock_hz) / 1e12});
        }
    }
    return rows;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
    out << "M,precision,dmul_cycles,latency_cycles,throughput_tops\n";
    for (const auto& r : rows) {
        out << r.m << ",8x" << r.ow_second << ',' << r.dmul_cycles << ',' << r.latency_cycles << ','
            << std::fixed << std::setprecision(6) << r.throughput_tops << std::defaultfloat << '\n';
    }
}

}  // namespace adip
