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

// Acceptance suite: one PASS/FAIL line per criterion, exit status 0 iff all pass.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "adip/analytic.hpp"
#include "adip/array.hpp"
#include "adip/cost.hpp"
#include "adip/matrix_io.hpp"
#include "adip/numerics.hpp"
#include "adip/pe.hpp"
#include "adip/preprocess.hpp"
#include "adip/tiling.hpp"
#include "adip/workload.hpp"

namespace {

using namespace adip;

// Tolerances, in absolute fraction (0.01 = one percentage point).
constexpr double kOpsRelTol = 0.005;
constexpr double kLatencyTol = 0.01;
constexpr double kEnergyTol = 0.015;
constexpr double kMemoryTol = 0.025;
constexpr double kOracleTimeLimitS = 120.0;
constexpr int kOracleJobsPerSize = 1000;
constexpr int kRoundTripTiles = 10000;

struct Outcome {
    bool pass = true;
    std::string detail;
};

const std::vector<PrecisionMode>& all_modes() {
    static const std::vector<PrecisionMode> modes{
        PrecisionMode::w8(),           PrecisionMode(Precision::W4, 1), PrecisionMode(Precision::W4, 2),
        PrecisionMode(Precision::W2, 1), PrecisionMode(Precision::W2, 2), PrecisionMode(Precision::W2, 3),
        PrecisionMode(Precision::W2, 4)};
    return modes;
}

bool near(double got, double want, double tol) { return std::fabs(got - want) <= tol; }

std::string pct(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f%%", 100.0 * x);
    return buf;
}

Outcome oracle_equivalence() {
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(20260101);
    int jobs = 0, mismatches = 0, non_multiple = 0;
    std::string first;
    for (const std::size_t n : {2u, 4u, 8u, 16u}) {
        std::uniform_int_distribution<std::size_t> dim(1, 2 * n + 3);
        for (int i = 0; i < kOracleJobsPerSize; ++i) {
            const auto& mode = all_modes()[static_cast<std::size_t>(i) % all_modes().size()];
            MatMulJob job;
            job.n = n;
            job.precision = mode.tag();
            job.fusion = (i / 7) % 2 ? Fusion::AcrossColumns : Fusion::AcrossMatrices;
            const std::size_t m = dim(rng), k = dim(rng), p = dim(rng);
            if (m % n || k % n || p % n) ++non_multiple;
            job.a = random_matrix(m, k, 8, rng);
            for (int t = 0; t < mode.nw(); ++t) job.bs.push_back(random_matrix(k, p, mode.field_width(), rng));
            const auto got = run_tiled(job);
            ++jobs;
            if (got.results != oracle_matmul(job)) {
                if (mismatches++ == 0) {
                    first = "n=" + std::to_string(n) + " " + mode.name() + " " + std::to_string(m) + "x" +
                            std::to_string(k) + "x" + std::to_string(p);
                }
            }
        }
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    Outcome o;
    o.pass = mismatches == 0 && secs < kOracleTimeLimitS && non_multiple > 0;
    std::ostringstream s;
    s << jobs << " jobs over n in {2,4,8,16} and 7 modes (" << non_multiple << " non-multiple shapes), "
      << mismatches << " mismatches, " << secs << " s (limit " << kOracleTimeLimitS << " s)";
    if (!first.empty()) s << ", first: " << first;
    o.detail = s.str();
    return o;
}

Outcome dc_identity() {
    long long pairs = 0, pe_cases = 0, bad = 0;
    for (int a = -128; a <= 127; ++a) {
        for (int b = -128; b <= 127; ++b) {
            const auto as = split_subwords(a, 8), bs = split_subwords(b, 8);
            long long sum = 0;
            for (std::size_t i = 0; i < 4; ++i) {
                for (std::size_t j = 0; j < 4; ++j) sum += mul2(as[i], bs[j]) * (1LL << (2 * (i + j)));
            }
            ++pairs;
            if (sum != a * b || dc_multiply(a, 8, b, 8) != a * b) ++bad;
        }
    }
    for (const auto& mode : all_modes()) {
        const int field = mode.field_width();
        for (int in = -128; in <= 127; ++in) {
            for (int byte = 0; byte < 256; ++byte) {
                const auto w = static_cast<std::uint8_t>(byte);
                const auto vals = recombine(group_multiply(static_cast<Act8>(in), w, mode), mode);
                for (int t = 0; t < mode.nw(); ++t) {
                    const int weight = sign_extend(static_cast<unsigned>(byte) >> (field * t), field);
                    ++pe_cases;
                    if (vals[static_cast<std::size_t>(t)] != static_cast<long long>(in) * weight) ++bad;
                }
            }
        }
    }
    return {bad == 0, std::to_string(pairs) + " signed 8-bit pairs, " + std::to_string(pe_cases) +
                          " PE (input, weight byte, mode, slot) recombinations, " + std::to_string(bad) +
                          " errors"};
}

Outcome cycle_fidelity() {
    std::mt19937_64 rng(7);
    std::ostringstream s;
    bool pass = true;
    for (const std::size_t n : {4u, 8u, 16u, 32u, 64u}) {
        for (const auto precision : {Precision::W8, Precision::W4, Precision::W2}) {
            const auto mode = PrecisionMode::full(precision);
            std::vector<Matrix<std::int8_t>> raw;
            std::vector<WeightTile> tiles;
            for (int t = 0; t < mode.nw(); ++t) {
                raw.push_back(random_matrix(n, n, mode.field_width(), rng));
                tiles.push_back(permute(WeightTile(raw.back(), mode.field_width())));
            }
            const auto a = random_matrix(n, n, 8, rng);
            ArrayConfig config;
            config.n = n;
            ArraySim sim(config, mode);
            const auto r = sim.run_tile(interleave(tiles, mode), a);
            const auto eq = adip_latency({static_cast<std::int64_t>(n), 16, 2, 8, weight_bits(precision), 1,
                                          mode.reducer_depth()});
            bool ok = r.cycles == static_cast<Cycle>(eq);
            for (int t = 0; t < mode.nw(); ++t) {
                MatMulJob job;
                job.a = a;
                job.bs = {raw[static_cast<std::size_t>(t)]};
                job.precision = precision;
                job.n = n;
                ok = ok && r.outputs[static_cast<std::size_t>(t)] == oracle_matmul(job).front();
            }
            if (!ok) {
                pass = false;
                s << " n=" << n << "/" << to_string(precision) << ": " << r.cycles << " vs " << eq << ";";
            }
        }
    }
    return {pass, pass ? "measured single-tile latency == N*dmul + N + S + E - 2 for n in {4,8,16,32,64}, "
                         "S=1, E=2/1/0"
                       : "mismatch:" + s.str()};
}

Outcome multiplier_sweep() {
    const std::vector<std::vector<std::int64_t>> want{{8, 4, 2, 1}, {4, 2, 1, 1}, {2, 1, 1, 1}};
    const auto rows = sweep_multipliers();
    bool pass = rows.size() == 12;
    std::ostringstream s;
    for (std::size_t w = 0; pass && w < 3; ++w) {
        s << (w ? "; " : "") << "8x" << rows[w * 4].ow_second << ":";
        for (std::size_t i = 0; i < 4; ++i) {
            s << ' ' << rows[w * 4 + i].dmul_cycles;
            pass = pass && rows[w * 4 + i].dmul_cycles == want[w][i];
        }
    }
    pass = pass && rows[3].m == 16 && rows[3].dmul_cycles == 1;
    return {pass, "D-MUL cycles over M={2,4,8,16}: " + s.str()};
}

Outcome peak_throughput_check() {
    const std::vector<double> want{8.192e12, 16.384e12, 32.768e12};
    const std::vector<std::int64_t> widths{8, 4, 2};
    bool pass = true;
    std::ostringstream s;
    for (std::size_t i = 0; i < 3; ++i) {
        const double got = peak_throughput({64, 16, 2, 8, widths[i], 1, 2}, 1e9);
        pass = pass && got == want[i];
        s << (i ? " / " : "") << got / 1e12;
    }
    return {pass, "n=64 @ 1 GHz: " + s.str() + " TOPS"};
}

Outcome throughput_gain() {
    bool pass = true;
    std::ostringstream s;
    for (const std::size_t n : {4u, 8u, 16u, 32u, 64u}) {
        const auto passes = [&](Precision p, Fusion f, std::size_t matrices, std::size_t cols) {
            return plan_tiles(n, n, cols, matrices, p, n, f).pass_count();
        };
        for (const auto f : {Fusion::AcrossMatrices, Fusion::AcrossColumns}) {
            const std::size_t matrices = f == Fusion::AcrossMatrices ? 4 : 1;
            const std::size_t cols = f == Fusion::AcrossMatrices ? n : 4 * n;
            const auto p8 = passes(Precision::W8, f, matrices, cols);
            pass = pass && p8 == 1 * passes(Precision::W8, f, matrices, cols) &&
                   p8 == 2 * passes(Precision::W4, f, matrices, cols) &&
                   p8 == 4 * passes(Precision::W2, f, matrices, cols);
        }
        const std::int64_t nn = static_cast<std::int64_t>(n);
        const auto par = [&](std::int64_t w) { return parallel_factor({nn, 16, 2, 8, w, 1, 2}); };
        pass = pass && par(8) == 1 && par(4) == 2 && par(2) == 4;
    }
    s << "pass-count ratio W8:W4:W2 = 1:2:4 and closed-form parallel factor 1/2/4 for n in {4,8,16,32,64}";
    return {pass, s.str()};
}

Outcome workload_totals() {
    const std::vector<std::pair<const char*, double>> want{
        {"gpt2-medium", 309.24e9}, {"bert-large", 128.85e9}, {"bitnet", 4.51e12}};
    bool pass = true;
    std::ostringstream s;
    for (const auto& [name, ops] : want) {
        const double got = static_cast<double>(total_ops(builtin_model(name)));
        const double rel = std::fabs(got - ops) / ops;
        pass = pass && rel <= kOpsRelTol;
        s << name << ' ' << got / 1e9 << " GOP (" << pct(rel) << " off); ";
    }
    return {pass, s.str() + "tol " + pct(kOpsRelTol)};
}

Outcome latency_improvements() {
    const auto gpt2 = evaluate(builtin_model("gpt2-medium"));
    const auto bert = evaluate(builtin_model("bert-large"));
    const auto bitnet = evaluate(builtin_model("bitnet"));
    const bool pass = near(bert.projection_latency_improvement(), 0.50, kLatencyTol) &&
                      near(bitnet.projection_latency_improvement(), 0.75, kLatencyTol) &&
                      near(gpt2.projection_latency_improvement(), 0.0, kLatencyTol) &&
                      near(bert.latency_improvement(), 0.40, kLatencyTol) &&
                      near(bitnet.latency_improvement(), 0.536, kLatencyTol);
    return {pass, "n=32 projections: BERT " + pct(bert.projection_latency_improvement()) + " (50%), BitNet " +
                      pct(bitnet.projection_latency_improvement()) + " (75%), GPT-2 " +
                      pct(gpt2.projection_latency_improvement()) + " (0%); totals BERT " +
                      pct(bert.latency_improvement()) + " (40%), BitNet " + pct(bitnet.latency_improvement()) +
                      " (53.6%); tol " + pct(kLatencyTol)};
}

Outcome energy_vs_dip() {
    CostParams params;
    params.adip_power = 1.63;
    const double gpt2 = -evaluate(builtin_model("gpt2-medium"), params).energy_improvement();
    const double bert = evaluate(builtin_model("bert-large"), params).energy_improvement();
    const double bitnet = evaluate(builtin_model("bitnet"), params).energy_improvement();
    const bool pass = near(gpt2, 0.628, kEnergyTol) && near(bert, 0.023, kEnergyTol) && near(bitnet, 0.244, kEnergyTol);
    return {pass, "GPT-2 overhead " + pct(gpt2) + " (62.8%), BERT improvement " + pct(bert) +
                      " (2.3%), BitNet improvement " + pct(bitnet) + " (24.4%); tol " + pct(kEnergyTol)};
}

Outcome memory_savings() {
    const double gpt2 = evaluate(builtin_model("gpt2-medium")).memory_savings();
    const double bert = evaluate(builtin_model("bert-large")).memory_savings();
    const double bitnet = evaluate(builtin_model("bitnet")).memory_savings();
    const bool pass = near(gpt2, 0.0, kMemoryTol) && near(bert, 0.40, kMemoryTol) && near(bitnet, 0.536, kMemoryTol);
    return {pass, "GPT-2 " + pct(gpt2) + " (0%), BERT " + pct(bert) + " (40.0%), BitNet " + pct(bitnet) +
                      " (53.6%); tol " + pct(kMemoryTol)};
}

Outcome preprocess_round_trip() {
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<std::size_t> size(1, 8);
    int tiles = 0, bad = 0;
    for (int i = 0; tiles < kRoundTripTiles; ++i) {
        const auto& mode = all_modes()[static_cast<std::size_t>(i) % all_modes().size()];
        const std::size_t n = size(rng);
        std::uniform_int_distribution<std::size_t> dim(1, 2 * n + 1);
        const std::size_t k = dim(rng), p = dim(rng);
        std::vector<Matrix<std::int8_t>> mats;
        for (int t = 0; t < mode.nw(); ++t) mats.push_back(random_matrix(k, p, mode.field_width(), rng));
        const auto grid = prepare_weights(mats, mode, n);
        for (std::size_t tr = 0; tr < grid.tile_rows; ++tr) {
            for (std::size_t tc = 0; tc < grid.tile_cols; ++tc) {
                const auto parts = deinterleave(grid.at(tr, tc));
                for (std::size_t t = 0; t < mats.size(); ++t) {
                    ++tiles;
                    if (inverse_permute(parts[t]).data() != extract_tile(mats[t], tr, tc, n)) ++bad;
                }
            }
        }
        const auto recovered = recover_weights(grid);
        for (std::size_t t = 0; t < mats.size(); ++t) {
            for (std::size_t r = 0; r < recovered[t].rows(); ++r) {
                for (std::size_t c = 0; c < recovered[t].cols(); ++c) {
                    const int want = (r < k && c < p) ? mats[t](r, c) : 0;
                    if (recovered[t](r, c) != want) ++bad;
                }
            }
        }
    }
    return {bad == 0, std::to_string(tiles) + " tiles over 7 modes, " + std::to_string(bad) + " differences"};
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"oracle equivalence", oracle_equivalence},
        {"divide-and-conquer identity", dc_identity},
        {"cycle fidelity", cycle_fidelity},
        {"multiplier sweep", multiplier_sweep},
        {"peak throughput", peak_throughput_check},
        {"throughput gain", throughput_gain},
        {"workload totals", workload_totals},
        {"latency improvement", latency_improvements},
        {"energy vs DiP", energy_vs_dip},
        {"memory-access savings", memory_savings},
        {"preprocessing round trip", preprocess_round_trip},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        if (!o.pass) ++failed;
        std::printf("[%s] %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%zu/%zu criteria passed\n", criteria.size() - static_cast<std::size_t>(failed), criteria.size());
    return failed == 0 ? 0 : 1;
}
