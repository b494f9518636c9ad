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
 * @file cost.hpp
 * @brief Latency, energy and memory-traffic comparison of WS, DiP and ADiP.
 *
 * All three architectures run the same tiled pass structure (see tiling.hpp).
 * Only ADiP packs r = 8 / weight_bits weight tiles per pass in projection
 * stages; act-act stages run 8b x 8b everywhere. WS pays an extra (n - 1)
 * skew cycles per pass. Energy is relative power times cycles, with DiP's
 * power as the unit.
 */

#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string_view>
#include <vector>

#include "adip/array.hpp"
#include "adip/tiling.hpp"
#include "adip/workload.hpp"

namespace adip {

enum class Arch { WS, DiP, ADiP };

[[nodiscard]] std::string_view to_string(Arch a) noexcept;
/// Throws FormatError for an unknown name.
[[nodiscard]] Arch parse_arch(std::string_view s);

/// ADiP power relative to DiP for the synthesized sizes 4, 8, 16, 32, 64.
/// Throws Error for other sizes.
[[nodiscard]] double adip_power_factor(std::size_t n);

struct CostParams {
    std::size_t n = 32;
    double clock_hz = 1e9;
    double dip_power = 1.0;
    double ws_power = 1.25;               ///< DiP is up to 1.25x lower power than WS
    std::optional<double> adip_power;     ///< default: adip_power_factor(n)
    bool ws_skew = true;                  ///< add (n - 1) fill cycles per WS pass
    int s_stages = 1;
    bool overlap_weight_load = true;
    Fusion projection_fusion = Fusion::AcrossColumns;
    bool count_output_writes = false;
    int output_bytes = 1;                 ///< 1 = requantized activations, 4 = raw psums
    bool psum_spill = false;              ///< write/read psums per k pass instead of holding them

    [[nodiscard]] double power(Arch a) const;
    void validate() const;
};

struct MemBytes {
    std::int64_t input_reads = 0;
    std::int64_t weight_reads = 0;
    std::int64_t output_writes = 0;

    [[nodiscard]] std::int64_t total() const noexcept { return input_reads + weight_reads + output_writes; }
    MemBytes& operator+=(const MemBytes& o) noexcept;
    friend bool operator==(const MemBytes&, const MemBytes&) = default;
};

struct StageCost {
    Stage stage = Stage::QProj;
    Arch arch = Arch::DiP;
    std::int64_t passes = 0;  ///< weight-tile loads over the whole model
    Cycle cycles = 0;
    double energy = 0.0;      ///< relative power x cycles
    MemBytes mem;
};

/// Cost of one stage over all layers and heads.
[[nodiscard]] StageCost stage_cost(const StageSpec& stage, Arch arch, const CostParams& params);
[[nodiscard]] Cycle stage_latency(const StageSpec& stage, Arch arch, const CostParams& params);

struct ArchReport {
    Arch arch = Arch::DiP;
    std::vector<StageCost> stages;
    Cycle cycles = 0;
    double energy = 0.0;
    MemBytes mem;
};

struct WorkloadReport {
    MhaConfig model;
    CostParams params;
    std::array<ArchReport, 3> archs;  ///< indexed by Arch

    [[nodiscard]] const ArchReport& of(Arch a) const { return archs[static_cast<std::size_t>(a)]; }

    /// 1 - ADiP / DiP, over all stages.
    [[nodiscard]] double latency_improvement() const;
    /// 1 - ADiP / DiP over projection stages only.
    [[nodiscard]] double projection_latency_improvement() const;
    /// 1 - ADiP / DiP energy; negative means ADiP costs more.
    [[nodiscard]] double energy_improvement() const;
    [[nodiscard]] double memory_savings() const;
};

[[nodiscard]] WorkloadReport evaluate(const MhaConfig& model, const CostParams& params = {});

struct LatencyTotal {
    Cycle cycles = 0;
    double improvement_vs_dip = 0.0;
};
struct EnergyTotal {
    double energy = 0.0;
    double change_vs_dip = 0.0;  ///< ADiP/DiP - 1 style ratio: positive = overhead
};
struct MemoryTotal {
    MemBytes bytes;
    double savings_vs_dip = 0.0;
};

[[nodiscard]] LatencyTotal total_latency(const MhaConfig& model, Arch arch, const CostParams& params = {});
[[nodiscard]] EnergyTotal total_energy(const MhaConfig& model, Arch arch, const CostParams& params = {});
[[nodiscard]] MemoryTotal memory_accesses(const MhaConfig& model, Arch arch, const CostParams& params = {});

/// `stage,arch,cycles,energy_rel,bytes_in,bytes_w,bytes_out`, one row per stage and arch,
/// followed by a `total` row per arch.
void write_cost_csv(std::ostream& out, const WorkloadReport& report);
/// Summary with op counts, per-arch totals and ADiP-vs-DiP percentages.
void write_summary_json(std::ostream& out, const WorkloadReport& report);

}  // namespace adip
