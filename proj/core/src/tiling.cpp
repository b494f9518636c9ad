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

#include "adip/tiling.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "adip/error.hpp"
#include "adip/numerics.hpp"
#include "adip/preprocess.hpp"

namespace adip {

namespace {

std::size_t ceil_div(std::size_t a, std::size_t b) { return (a + b - 1) / b; }

std::vector<std::vector<WeightUnit>> group_units(std::size_t matrices, std::size_t tp, std::size_t r,
                                                 Fusion fusion) {
    std::vector<std::vector<WeightUnit>> groups;
    if (fusion == Fusion::AcrossMatrices) {
        for (std::size_t j = 0; j < tp; ++j) {
            for (std::size_t t0 = 0; t0 < matrices; t0 += r) {
                std::vector<WeightUnit> g;
                for (std::size_t t = t0; t < std::min(matrices, t0 + r); ++t) g.push_back({t, j});
                groups.push_back(std::move(g));
            }
        }
    } else {
        std::vector<WeightUnit> g;
        for (std::size_t t = 0; t < matrices; ++t) {
            for (std::size_t j = 0; j < tp; ++j) {
                g.push_back({t, j});
                if (g.size() == r) groups.push_back(std::exchange(g, {}));
            }
        }
        if (!g.empty()) groups.push_back(std::move(g));
    }
    return groups;
}

// A[:, k-block], zero-padded to rows x n.
Matrix<std::int8_t> input_block(const Matrix<std::int8_t>& a, std::size_t tile_k, std::size_t rows,
                                std::size_t n) {
    Matrix<std::int8_t> block(rows, n);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t c = 0; c < n; ++c) {
            const std::size_t k = tile_k * n + c;
            if (k >= a.cols()) break;
            block(i, c) = a(i, k);
        }
    }
    return block;
}

}  // namespace

TiledPlan plan_tiles(std::size_t m, std::size_t k, std::size_t p, std::size_t matrices,
                     Precision precision, std::size_t n, Fusion fusion) {
    if (n == 0) throw ShapeError("array size must be >= 1");
    if (m == 0 || k == 0 || p == 0 || matrices == 0) throw ShapeError("empty matmul dimension");
    TiledPlan plan;
    plan.n = n;
    plan.precision = precision;
    plan.tm = ceil_div(m, n);
    plan.tk = ceil_div(k, n);
    plan.tp = ceil_div(p, n);
    const auto r = static_cast<std::size_t>(interleave_factor(precision));
    for (auto& units : group_units(matrices, plan.tp, r, fusion)) {
        for (std::size_t kk = 0; kk < plan.tk; ++kk) plan.passes.push_back(Pass{kk, units});
    }
    return plan;
}

Cycle pass_cycles(std::size_t rows, std::size_t n, int s_stages, int e_stages) noexcept {
    return static_cast<Cycle>(rows + n) + static_cast<Cycle>(s_stages + e_stages) - 2;
}

Cycle model_cycles(const TiledPlan& plan, const TimingOptions& timing) {
    Cycle total = 0;
    bool first = true;
    for (const auto& pass : plan.passes) {
        const PrecisionMode mode(plan.precision, static_cast<int>(pass.units.size()));
        const int e = timing.e_stages.value_or(mode.reducer_depth());
        if (first || !timing.overlap_weight_load) total += plan.n;
        first = false;
        total += pass_cycles(plan.streamed_rows(), plan.n, timing.s_stages, e);
    }
    return total;
}

void validate(const MatMulJob& job) {
    if (job.n == 0) throw ShapeError("array size must be >= 1");
    if (job.bs.empty()) throw ShapeError("job has no weight matrices");
    if (job.a.rows() == 0 || job.a.cols() == 0) throw ShapeError("empty input matrix");
    const int width = weight_bits(job.precision);
    for (const auto& b : job.bs) {
        if (b.rows() != job.a.cols()) {
            throw ShapeError("inner dimensions differ: A is " + std::to_string(job.a.rows()) + "x" +
                             std::to_string(job.a.cols()) + ", B is " + std::to_string(b.rows()) +
                             "x" + std::to_string(b.cols()));
        }
        if (b.cols() != job.bs.front().cols()) throw ShapeError("weight matrices differ in shape");
        for (const auto v : b.data()) {
            if (!fits_width(v, width)) {
                throw WidthError("weight " + std::to_string(v) + " does not fit in " +
                                 std::to_string(width) + " bits");
            }
        }
    }
}

std::vector<Matrix<std::int32_t>> oracle_matmul(const MatMulJob& job) {
    validate(job);
    const std::size_t m = job.a.rows(), kdim = job.a.cols(), p = job.bs.front().cols();
    std::vector<Matrix<std::int32_t>> out;
    for (const auto& b : job.bs) {
        Matrix<std::int32_t> c(m, p);
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = 0; j < p; ++j) {
                std::int64_t acc = 0;
                for (std::size_t k = 0; k < kdim; ++k) acc += std::int64_t{job.a(i, k)} * b(k, j);
                c(i, j) = static_cast<std::int32_t>(acc);
            }
        }
        out.push_back(std::move(c));
    }
    return out;
}

std::vector<Matrix<std::int32_t>> oracle_matmul_kij(const MatMulJob& job) {
    validate(job);
    const std::size_t m = job.a.rows(), kdim = job.a.cols(), p = job.bs.front().cols();
    std::vector<Matrix<std::int32_t>> out;
    for (const auto& b : job.bs) {
        Matrix<std::int32_t> c(m, p);
        for (std::size_t k = 0; k < kdim; ++k) {
            for (std::size_t i = 0; i < m; ++i) {
                const std::int32_t a = job.a(i, k);
                for (std::size_t j = 0; j < p; ++j) c(i, j) += a * b(k, j);
            }
        }
        out.push_back(std::move(c));
    }
    return out;
}

TiledResult run_tiled(const MatMulJob& job, const TimingOptions& timing, std::ostream* trace) {
    validate(job);
    const std::size_t n = job.n;
    const std::size_t m = job.a.rows(), p = job.bs.front().cols();

    TiledResult result;
    result.plan = plan_tiles(m, job.a.cols(), p, job.bs.size(), job.precision, n, job.fusion);
    result.pass_count = result.plan.pass_count();
    result.results.assign(job.bs.size(), Matrix<std::int32_t>(m, p));

    const auto& passes = result.plan.passes;
    ArraySim sim(ArrayConfig{n, timing.s_stages, timing.e_stages, timing.overlap_weight_load},
                 PrecisionMode(job.precision, static_cast<int>(passes.front().units.size())));
    sim.set_trace(trace);
    const int width = weight_bits(job.precision);
    const std::size_t rows = result.plan.streamed_rows();

    for (const auto& pass : passes) {
        const PrecisionMode mode(job.precision, static_cast<int>(pass.units.size()));
        if (!(sim.mode() == mode)) sim.set_mode(mode);

        std::vector<WeightTile> tiles;
        tiles.reserve(pass.units.size());
        for (const auto& u : pass.units) {
            tiles.push_back(permute(WeightTile(extract_tile(job.bs[u.matrix], pass.tile_k, u.tile_col, n), width)));
        }
        const auto packed = interleave(tiles, mode);
        const auto tile = sim.run_tile(packed, input_block(job.a, pass.tile_k, rows, n));

        for (std::size_t slot = 0; slot < pass.units.size(); ++slot) {
            const auto& u = pass.units[slot];
            auto& c = result.results[u.matrix];
            for (std::size_t i = 0; i < m; ++i) {
                for (std::size_t col = 0; col < n; ++col) {
                    const std::size_t j = u.tile_col * n + col;
                    if (j >= p) break;
                    c(i, j) += tile.outputs[slot](i, col);
                }
            }
        }
    }
    result.total_cycles = sim.cycle();
    return result;
}

}  // namespace adip
