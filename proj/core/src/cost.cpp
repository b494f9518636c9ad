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

#include "adip/cost.hpp"

#include <ostream>
#include <string>

#include <json.hpp>

#include "adip/error.hpp"

namespace adip {

namespace {

constexpr std::array<Arch, 3> kArchs{Arch::WS, Arch::DiP, Arch::ADiP};

bool is_qkv(Stage s) { return s == Stage::QProj || s == Stage::KProj || s == Stage::VProj; }

double ratio(double num, double den) { return den == 0.0 ? 0.0 : num / den; }

}  // namespace

std::string_view to_string(Arch a) noexcept {
    switch (a) {
        case Arch::WS: return "ws";
        case Arch::DiP: return "dip";
        case Arch::ADiP: return "adip";
    }
    return "?";
}

Arch parse_arch(std::string_view s) {
    for (const auto a : kArchs) {
        if (to_string(a) == s) return a;
    }
    throw FormatError("unknown architecture '" + std::string(s) + "'");
}

double adip_power_factor(std::size_t n) {
    switch (n) {
        case 4: return 1.63;
        case 8: return 1.59;
        case 16: return 1.57;
        case 32: return 1.63;
        case 64: return 1.69;
        default:
            throw Error("no ADiP power factor for a " + std::to_string(n) + "x" + std::to_string(n) +
                        " array (synthesized sizes: 4, 8, 16, 32, 64)");
    }
}

double CostParams::power(Arch a) const {
    switch (a) {
        case Arch::WS: return ws_power;
        case Arch::DiP: return dip_power;
        case Arch::ADiP: return adip_power ? *adip_power : adip_power_factor(n);
    }
    return 1.0;
}

void CostParams::validate() const {
    if (n == 0) throw Error("array size must be >= 1");
    if (s_stages < 1) throw Error("S must be >= 1");
    if (output_bytes <= 0) throw Error("output_bytes must be positive");
    for (const auto a : kArchs) {
        if (power(a) <= 0.0) throw Error("power factors must be positive");
    }
}

MemBytes& MemBytes::operator+=(const MemBytes& o) noexcept {
    input_reads += o.input_reads;
    weight_reads += o.weight_reads;
    output_writes += o.output_writes;
    return *this;
}

StageCost stage_cost(const StageSpec& stage, Arch arch, const CostParams& params) {
    params.validate();
    const bool packs = arch == Arch::ADiP && stage.kind == StageKind::Projection;
    const Precision precision = packs ? precision_for_bits(stage.weight_bits) : Precision::W8;
    const int stored_bits = weight_bits(precision);

    // Triplet fusion plans Q, K and V together and charges each a third.
    const bool joint = packs && params.projection_fusion == Fusion::AcrossMatrices && is_qkv(stage.stage);
    const std::size_t matrices = joint ? 3 : 1;

    const std::size_t n = params.n;
    const auto plan = plan_tiles(static_cast<std::size_t>(stage.m), static_cast<std::size_t>(stage.k),
                                 static_cast<std::size_t>(stage.p), matrices, precision, n,
                                 params.projection_fusion);
    const TimingOptions timing{params.s_stages, std::nullopt, params.overlap_weight_load};

    Cycle cycles = model_cycles(plan, timing);
    if (arch == Arch::WS && params.ws_skew) cycles += static_cast<Cycle>(n - 1) * plan.pass_count();

    MemBytes mem;
    const auto rows = static_cast<std::int64_t>(plan.streamed_rows());
    const auto nn = static_cast<std::int64_t>(n);
    for (const auto& pass : plan.passes) {
        const auto units = static_cast<std::int64_t>(pass.units.size());
        mem.input_reads += rows * nn;
        mem.weight_reads += (nn * nn * units * stored_bits + 7) / 8;
        if (params.psum_spill) {
            const std::int64_t psum_bytes = rows * nn * units * 4;
            mem.output_writes += psum_bytes;
            if (pass.tile_k > 0) mem.input_reads += psum_bytes;
        }
    }
    if (params.count_output_writes) {
        mem.output_writes += stage.m * stage.p * static_cast<std::int64_t>(matrices) * params.output_bytes;
    }

    const std::int64_t instances = stage.count * stage.layers;
    const auto div = static_cast<std::int64_t>(matrices);
    StageCost cost;
    cost.stage = stage.stage;
    cost.arch = arch;
    cost.passes = static_cast<std::int64_t>(plan.pass_count()) * instances / div;
    cost.cycles = cycles * static_cast<Cycle>(instances) / static_cast<Cycle>(div);
    cost.mem.input_reads = mem.input_reads * instances / div;
    cost.mem.weight_reads = mem.weight_reads * instances / div;
    cost.mem.output_writes = mem.output_writes * instances / div;
    cost.energy = params.power(arch) * static_cast<double>(cost.cycles);
    return cost;
}

Cycle stage_latency(const StageSpec& stage, Arch arch, const CostParams& params) {
    return stage_cost(stage, arch, params).cycles;
}

double WorkloadReport::latency_improvement() const {
    return 1.0 - ratio(static_cast<double>(of(Arch::ADiP).cycles), static_cast<double>(of(Arch::DiP).cycles));
}

double WorkloadReport::projection_latency_improvement() const {
    double adip = 0.0, dip = 0.0;
    for (std::size_t i = 0; i < of(Arch::DiP).stages.size(); ++i) {
        const auto& d = of(Arch::DiP).stages[i];
        if (kind_of(d.stage) != StageKind::Projection) continue;
        dip += static_cast<double>(d.cycles);
        adip += static_cast<double>(of(Arch::ADiP).stages[i].cycles);
    }
    return 1.0 - ratio(adip, dip);
}

double WorkloadReport::energy_improvement() const {
    return 1.0 - ratio(of(Arch::ADiP).energy, of(Arch::DiP).energy);
}

double WorkloadReport::memory_savings() const {
    return 1.0 - ratio(static_cast<double>(of(Arch::ADiP).mem.total()),
                       static_cast<double>(of(Arch::DiP).mem.total()));
}

WorkloadReport evaluate(const MhaConfig& model, const CostParams& params) {
    WorkloadReport report;
    report.model = model;
    report.params = params;
    const auto specs = stages(model);
    for (const auto a : kArchs) {
        auto& ar = report.archs[static_cast<std::size_t>(a)];
        ar.arch = a;
        for (const auto& st : specs) {
            ar.stages.push_back(stage_cost(st, a, params));
            const auto& c = ar.stages.back();
            ar.cycles += c.cycles;
            ar.energy += c.energy;
            ar.mem += c.mem;
        }
    }
    return report;
}

LatencyTotal total_latency(const MhaConfig& model, Arch arch, const CostParams& params) {
    const auto r = evaluate(model, params);
    return {r.of(arch).cycles,
            1.0 - ratio(static_cast<double>(r.of(arch).cycles), static_cast<double>(r.of(Arch::DiP).cycles))};
}

EnergyTotal total_energy(const MhaConfig& model, Arch arch, const CostParams& params) {
    const auto r = evaluate(model, params);
    return {r.of(arch).energy, ratio(r.of(arch).energy, r.of(Arch::DiP).energy) - 1.0};
}

MemoryTotal memory_accesses(const MhaConfig& model, Arch arch, const CostParams& params) {
    const auto r = evaluate(model, params);
    return {r.of(arch).mem, 1.0 - ratio(static_cast<double>(r.of(arch).mem.total()),
                                        static_cast<double>(r.of(Arch::DiP).mem.total()))};
}

void write_cost_csv(std::ostream& out, const WorkloadReport& report) {
    out << "stage,arch,cycles,energy_rel,bytes_in,bytes_w,bytes_out\n";
    auto row = [&out](std::string_view stage, std::string_view arch, Cycle cycles, double energy,
                      const MemBytes& m) {
        out << stage << ',' << arch << ',' << cycles << ',' << energy << ',' << m.input_reads << ','
            << m.weight_reads << ',' << m.output_writes << '\n';
    };
    for (const auto& ar : report.archs) {
        for (const auto& st : ar.stages) row(to_string(st.stage), to_string(ar.arch), st.cycles, st.energy, st.mem);
    }
    for (const auto& ar : report.archs) row("total", to_string(ar.arch), ar.cycles, ar.energy, ar.mem);
}

void write_summary_json(std::ostream& out, const WorkloadReport& report) {
    nlohmann::ordered_json j;
    j["model"] = report.model.name;
    j["array_size"] = report.params.n;
    j["total_ops"] = total_ops(report.model);
    j["projection_fraction"] = projection_fraction(report.model);
    for (const auto& ar : report.archs) {
        auto& a = j["archs"][std::string(to_string(ar.arch))];
        a["cycles"] = ar.cycles;
        a["latency_s"] = static_cast<double>(ar.cycles) / report.params.clock_hz;
        a["energy_rel"] = ar.energy;
        a["bytes"] = ar.mem.total();
    }
    j["adip_vs_dip"] = {
        {"latency_improvement_pct", 100.0 * report.latency_improvement()},
        {"projection_latency_improvement_pct", 100.0 * report.projection_latency_improvement()},
        {"energy_improvement_pct", 100.0 * report.energy_improvement()},
        {"memory_savings_pct", 100.0 * report.memory_savings()},
    };
    out << j.dump(2) << '\n';
}

}  // namespace adip
