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

#include <benchmark/benchmark.h>

#include <random>

#include "adip/array.hpp"
#include "adip/cost.hpp"
#include "adip/matrix_io.hpp"
#include "adip/pe.hpp"
#include "adip/tiling.hpp"

namespace {

using namespace adip;

void BM_GroupMultiply(benchmark::State& state) {
    const auto mode = PrecisionMode::full(static_cast<Precision>(state.range(0)));
    int in = 0;
    for (auto _ : state) {
        for (int b = 0; b < 256; ++b) {
            benchmark::DoNotOptimize(group_multiply(static_cast<Act8>(in), static_cast<std::uint8_t>(b), mode));
        }
        in = (in + 37) & 0x7f;
    }
    state.SetItemsProcessed(state.iterations() * 256);
}
BENCHMARK(BM_GroupMultiply)->Arg(0)->Arg(1)->Arg(2);

void BM_SingleTile(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto mode = PrecisionMode::full(Precision::W2);
    std::mt19937_64 rng(1);
    std::vector<WeightTile> tiles;
    for (int t = 0; t < mode.nw(); ++t) tiles.push_back(permute(WeightTile(random_matrix(n, n, 2, rng), 2)));
    const auto packed = interleave(tiles, mode);
    const auto a = random_matrix(n, n, 8, rng);
    ArrayConfig config;
    config.n = n;
    ArraySim sim(config, mode);
    for (auto _ : state) benchmark::DoNotOptimize(sim.run_tile(packed, a));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n * n * n) * mode.nw());
}
BENCHMARK(BM_SingleTile)->RangeMultiplier(2)->Range(4, 64);

void BM_TiledJob(benchmark::State& state) {
    std::mt19937_64 rng(2);
    MatMulJob job;
    job.n = 8;
    job.precision = Precision::W4;
    job.a = random_matrix(33, 40, 8, rng);
    job.bs = {random_matrix(40, 29, 4, rng), random_matrix(40, 29, 4, rng)};
    for (auto _ : state) benchmark::DoNotOptimize(run_tiled(job));
}
BENCHMARK(BM_TiledJob);

void BM_EvaluateWorkload(benchmark::State& state) {
    const auto model = builtin_model("bitnet");
    for (auto _ : state) benchmark::DoNotOptimize(evaluate(model));
}
BENCHMARK(BM_EvaluateWorkload);

}  // namespace

BENCHMARK_MAIN();
