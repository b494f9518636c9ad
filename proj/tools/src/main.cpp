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

#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "adip/cli/commands.hpp"

namespace {

void add_common(CLI::App& sub, adip::cli::RunConfig& cfg) {
    static const std::map<std::string, adip::cli::Format> formats{{"csv", adip::cli::Format::Csv},
                                                                  {"json", adip::cli::Format::Json}};
    sub.add_option("--size", cfg.size, "array rows/columns (n)");
    sub.add_option("--seed", cfg.seed, "random seed");
    sub.add_option("--format", cfg.format, "output format")
        ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
    sub.add_option("--out", cfg.out, "output path");
}

void add_mode(CLI::App& sub, adip::cli::RunConfig& cfg) {
    sub.add_option("--mode", cfg.mode, "weight precision")
        ->check(CLI::IsMember({"w8", "w4", "w2"}, CLI::ignore_case));
    sub.add_option("--nw", cfg.nw, "weight matrices packed per word (default: all slots)");
}

}  // namespace

int main(int argc, char** argv) {
    adip::cli::RunConfig cfg;
    CLI::App app{"Adaptive-precision systolic array simulator"};
    app.require_subcommand(1);

    auto* analytic = app.add_subcommand("analytic", "multiplier-count sweep of the closed-form model");
    add_common(*analytic, cfg);

    auto* simulate = app.add_subcommand("simulate", "tiled matmul on the cycle-accurate array vs the oracle");
    add_common(*simulate, cfg);
    add_mode(*simulate, cfg);
    simulate->add_option("-m,--rows", cfg.m, "rows of A");
    simulate->add_option("-k,--inner", cfg.k, "columns of A / rows of B");
    simulate->add_option("-p,--cols", cfg.p, "columns of B");
    simulate->add_option("--a", cfg.a_file, "activation matrix file");
    simulate->add_option("--b", cfg.b_files, "weight matrix file (repeat per matrix)");
    simulate->add_flag("--trace", cfg.trace, "write a per-cycle PE trace CSV");
    simulate->add_flag("--overlap-weights,!--no-overlap-weights", cfg.overlap_weights,
                       "hide weight loads behind the previous pass");

    auto* workload = app.add_subcommand("workload", "MHA latency, energy and memory vs WS and DiP");
    add_common(*workload, cfg);
    workload->add_option("model", cfg.model, "builtin model or JSON config path");
    workload->add_flag("--overlap-weights,!--no-overlap-weights", cfg.overlap_weights,
                       "hide weight loads behind the previous pass (default on)");
    workload->add_flag("--count-output-writes", cfg.count_output_writes, "include output writes in memory bytes");

    auto* inter = app.add_subcommand("interleave", "permute and pack weight matrices into stationary words");
    add_common(*inter, cfg);
    add_mode(*inter, cfg);
    inter->add_option("inputs", cfg.inputs, "weight matrix files (one per slot)");
    inter->add_option("-k,--rows", cfg.k, "rows of generated matrices");
    inter->add_option("-p,--cols", cfg.p, "columns of generated matrices");
    inter->add_flag("--verify", cfg.verify, "check the round trip back to the inputs");

    auto* sweep = app.add_subcommand("sweep", "single-tile latency, throughput gain and peak TOPS per size");
    add_common(*sweep, cfg);
    sweep->add_option("--sizes", cfg.sizes, "array sizes")->delimiter(',');

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : adip::cli::kBadInput;
    }
    cfg.subcommand = app.get_subcommands().front()->get_name();
    return adip::cli::run(cfg, std::cout, std::cerr);
}
