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

#include "adip/cli/commands.hpp"

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "adip/analytic.hpp"
#include "adip/array.hpp"
#include "adip/cost.hpp"
#include "adip/error.hpp"
#include "adip/matrix_io.hpp"
#include "adip/preprocess.hpp"
#include "adip/tiling.hpp"
#include "adip/workload.hpp"

namespace adip::cli {

namespace {

using nlohmann::ordered_json;

constexpr std::array<Precision, 3> kPrecisions{Precision::W8, Precision::W4, Precision::W2};

std::size_t size_or(const RunConfig& cfg, std::size_t fallback) { return cfg.size ? cfg.size : fallback; }

PrecisionMode mode_of(const RunConfig& cfg, int nw_override = -1) {
    const Precision p = parse_precision(cfg.mode);
    const int nw = nw_override > 0 ? nw_override : (cfg.nw > 0 ? cfg.nw : interleave_factor(p));
    return PrecisionMode(p, nw);
}

std::ofstream open_out(const std::string& path, std::ios::openmode mode = std::ios::out) {
    std::ofstream f(path, mode);
    if (!f) throw Error("cannot open '" + path + "' for writing");
    return f;
}

IntMatrix read_matrix_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw FormatError("cannot read matrix file '" + path + "'");
    return read_matrix_text(f);
}

// Writes to --out when given, otherwise to `fallback`.
template <typename Fn>
void emit(const RunConfig& cfg, std::ostream& fallback, Fn&& write) {
    if (cfg.out.empty()) {
        write(fallback);
        return;
    }
    auto f = open_out(cfg.out);
    write(f);
    if (!f) throw Error("write to '" + cfg.out + "' failed");
}

std::string pct(double x) {
    std::ostringstream s;
    s << std::fixed << std::setprecision(1) << 100.0 * x << '%';
    return s.str();
}

std::string change_phrase(double improvement, std::string_view lower, std::string_view higher) {
    if (improvement >= 0.0) return pct(improvement) + " " + std::string(lower);
    return pct(-improvement) + " " + std::string(higher);
}

}  // namespace

void RunConfig::validate() const {
    if (size > 65535) throw ShapeError("array size must be <= 65535");
    (void)parse_precision(mode);
    if (nw == 0 || nw < -1) throw ModeError("--nw must be >= 1");
    for (const auto s : sizes) {
        if (s == 0) throw ShapeError("sweep sizes must be >= 1");
    }
}

int cmd_analytic(const RunConfig& cfg, std::ostream& out, std::ostream&) {
    const auto n = static_cast<std::int64_t>(size_or(cfg, 64));
    const auto rows = sweep_multipliers(n);
    emit(cfg, out, [&](std::ostream& o) {
        if (cfg.format == Format::Csv) {
            write_sweep_csv(o, rows);
            return;
        }
        ordered_json j = ordered_json::array();
        for (const auto& r : rows) {
            j.push_back({{"M", r.m},
                         {"precision", "8x" + std::to_string(r.ow_second)},
                         {"dmul_cycles", r.dmul_cycles},
                         {"latency_cycles", r.latency_cycles},
                         {"throughput_tops", r.throughput_tops}});
        }
        o << j.dump(2) << '\n';
    });
    return kOk;
}

int cmd_simulate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const std::size_t n = size_or(cfg, 4);
    const Precision precision = parse_precision(cfg.mode);
    const int width = weight_bits(precision);

    MatMulJob job;
    job.n = n;
    job.precision = precision;
    job.fusion = Fusion::AcrossMatrices;
    if (!cfg.a_file.empty()) {
        if (cfg.b_files.empty()) throw FormatError("--a needs at least one --b weight matrix");
        const PrecisionMode mode = mode_of(cfg, static_cast<int>(cfg.b_files.size()));
        job.a = read_matrix_file(cfg.a_file).data;
        for (const auto& path : cfg.b_files) {
            auto b = read_matrix_file(path);
            if (b.width != width) {
                throw WidthError("'" + path + "' declares " + std::to_string(b.width) + "-bit values, mode " +
                                 mode.name() + " needs " + std::to_string(width));
            }
            job.bs.push_back(std::move(b.data));
        }
    } else {
        const PrecisionMode mode = mode_of(cfg);
        const std::size_t m = cfg.m ? cfg.m : 2 * n + 1;
        const std::size_t k = cfg.k ? cfg.k : 2 * n + 3;
        const std::size_t p = cfg.p ? cfg.p : std::max<std::size_t>(1, 2 * n - 1);
        std::mt19937_64 rng(cfg.seed);
        job.a = random_matrix(m, k, 8, rng);
        for (int t = 0; t < mode.nw(); ++t) job.bs.push_back(random_matrix(k, p, width, rng));
    }

    const TimingOptions timing{1, std::nullopt, cfg.overlap_weights.value_or(false)};
    std::ofstream trace_file;
    if (cfg.trace) trace_file = open_out(cfg.out.empty() ? "trace.csv" : cfg.out + ".trace.csv");

    const auto result = run_tiled(job, timing, cfg.trace ? &trace_file : nullptr);
    const auto expected = oracle_matmul(job);
    const Cycle model = model_cycles(result.plan, timing);

    std::string mismatch;
    for (std::size_t t = 0; t < expected.size() && mismatch.empty(); ++t) {
        const auto& c = result.results[t];
        for (std::size_t i = 0; i < c.rows() && mismatch.empty(); ++i) {
            for (std::size_t j = 0; j < c.cols(); ++j) {
                if (c(i, j) != expected[t](i, j)) {
                    mismatch = "matrix " + std::to_string(t) + " differs at (" + std::to_string(i) + "," +
                               std::to_string(j) + "): simulator " + std::to_string(c(i, j)) + ", oracle " +
                               std::to_string(expected[t](i, j));
                    break;
                }
            }
        }
    }
    const bool cycles_ok = result.total_cycles == model;
    const bool pass = mismatch.empty() && cycles_ok;

    const PrecisionMode mode(precision, static_cast<int>(job.bs.size()));
    if (cfg.format == Format::Json) {
        ordered_json j;
        j["size"] = n;
        j["mode"] = mode.name();
        j["shape"] = {job.a.rows(), job.a.cols(), job.bs.front().cols()};
        j["matrices"] = job.bs.size();
        j["passes"] = result.pass_count;
        j["cycles"] = result.total_cycles;
        j["model_cycles"] = model;
        j["status"] = pass ? "PASS" : "FAIL";
        if (!mismatch.empty()) j["mismatch"] = mismatch;
        out << j.dump(2) << '\n';
    } else {
        out << "field,value\n"
            << "size," << n << '\n'
            << "mode," << mode.name() << '\n'
            << "shape," << job.a.rows() << 'x' << job.a.cols() << 'x' << job.bs.front().cols() << '\n'
            << "matrices," << job.bs.size() << '\n'
            << "passes," << result.pass_count << '\n'
            << "cycles," << result.total_cycles << '\n'
            << "model_cycles," << model << '\n'
            << "status," << (pass ? "PASS" : "FAIL") << '\n';
    }
    if (!cfg.out.empty()) {
        auto f = open_out(cfg.out);
        for (const auto& c : result.results) write_matrix_text(f, c);
    }
    if (!mismatch.empty()) err << "FAIL: " << mismatch << '\n';
    if (!cycles_ok) err << "FAIL: measured " << result.total_cycles << " cycles, model " << model << '\n';
    return pass ? kOk : kCheckFailed;
}

int cmd_workload(const RunConfig& cfg, std::ostream& out, std::ostream&) {
    MhaConfig model;
    if (std::filesystem::is_regular_file(cfg.model)) {
        std::ifstream f(cfg.model);
        model = load_config_json(f);
    } else {
        model = builtin_model(cfg.model);
    }

    CostParams params;
    params.n = size_or(cfg, 32);
    params.overlap_weight_load = cfg.overlap_weights.value_or(true);
    params.count_output_writes = cfg.count_output_writes;
    const auto report = evaluate(model, params);

    auto summary = [&](std::ostream& o) {
        o << "model " << model.name << ": " << model.layers << " layers, d_model " << model.d_model << ", "
          << model.heads << " heads, d_k " << model.d_k << ", seq " << model.seq_len << ", "
          << model.weight_bits << "-bit weights\n";
        o << "array " << params.n << 'x' << params.n << ", ADiP power " << params.power(Arch::ADiP)
          << "x DiP, WS power " << params.power(Arch::WS) << "x DiP\n";
        o << "total ops " << std::fixed << std::setprecision(2) << static_cast<double>(total_ops(model)) / 1e9
          << " GOP, projections " << pct(projection_fraction(model)) << std::defaultfloat << "\n\n";

        const auto shares = breakdown(model);
        o << std::left << std::setw(10) << "stage" << std::right << std::setw(9) << "ops" << std::setw(16)
          << "ws_cycles" << std::setw(16) << "dip_cycles" << std::setw(16) << "adip_cycles" << std::setw(12)
          << "adip_gain" << '\n';
        for (std::size_t i = 0; i < shares.size(); ++i) {
            const auto ws = report.of(Arch::WS).stages[i].cycles;
            const auto dip = report.of(Arch::DiP).stages[i].cycles;
            const auto ad = report.of(Arch::ADiP).stages[i].cycles;
            o << std::left << std::setw(10) << to_string(shares[i].stage) << std::right << std::setw(9)
              << pct(shares[i].fraction) << std::setw(16) << ws << std::setw(16) << dip << std::setw(16) << ad
              << std::setw(12) << pct(1.0 - static_cast<double>(ad) / static_cast<double>(dip)) << '\n';
        }
        o << '\n';
        o << "latency: ADiP " << change_phrase(report.latency_improvement(), "lower", "higher")
          << " than DiP (projections " << pct(report.projection_latency_improvement()) << ")\n";
        o << "energy:  ADiP " << change_phrase(report.energy_improvement(), "lower", "higher") << " than DiP\n";
        o << "memory:  ADiP " << change_phrase(report.memory_savings(), "fewer bytes", "more bytes")
          << " than DiP\n";
    };

    auto artifact = [&](std::ostream& o) {
        if (cfg.format == Format::Json) {
            write_summary_json(o, report);
        } else {
            write_cost_csv(o, report);
        }
    };

    if (!cfg.out.empty()) {
        emit(cfg, out, artifact);
        summary(out);
    } else if (cfg.format == Format::Json) {
        artifact(out);
    } else {
        summary(out);
    }
    return kOk;
}

int cmd_interleave(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const std::size_t n = size_or(cfg, 4);
    std::vector<Matrix<std::int8_t>> mats;
    PrecisionMode mode = PrecisionMode::w8();
    if (!cfg.inputs.empty()) {
        mode = mode_of(cfg, static_cast<int>(cfg.inputs.size()));
        for (const auto& path : cfg.inputs) {
            auto m = read_matrix_file(path);
            if (m.width != mode.field_width()) {
                throw WidthError("'" + path + "' declares " + std::to_string(m.width) + "-bit values, mode " +
                                 mode.name() + " packs " + std::to_string(mode.field_width()) + "-bit fields");
            }
            mats.push_back(std::move(m.data));
        }
    } else {
        mode = mode_of(cfg);
        std::mt19937_64 rng(cfg.seed);
        const std::size_t rows = cfg.k ? cfg.k : n;
        const std::size_t cols = cfg.p ? cfg.p : n;
        for (int t = 0; t < mode.nw(); ++t) mats.push_back(random_matrix(rows, cols, mode.field_width(), rng));
    }

    const auto grid = prepare_weights(mats, mode, n);

    if (!cfg.out.empty()) {
        auto f = open_out(cfg.out, std::ios::binary);
        write_packed_grid(f, grid);
    }

    if (cfg.format == Format::Json) {
        ordered_json j;
        j["n"] = grid.n;
        j["mode"] = grid.mode.name();
        j["tile_rows"] = grid.tile_rows;
        j["tile_cols"] = grid.tile_cols;
        j["tiles"] = ordered_json::array();
        for (std::size_t tr = 0; tr < grid.tile_rows; ++tr) {
            for (std::size_t tc = 0; tc < grid.tile_cols; ++tc) {
                const auto& t = grid.at(tr, tc);
                ordered_json rows = ordered_json::array();
                for (std::size_t r = 0; r < n; ++r) {
                    ordered_json row = ordered_json::array();
                    for (std::size_t c = 0; c < n; ++c) row.push_back(t.bytes(r, c));
                    rows.push_back(std::move(row));
                }
                j["tiles"].push_back({{"tile_row", tr}, {"tile_col", tc}, {"bytes", std::move(rows)}});
            }
        }
        out << j.dump(2) << '\n';
    } else {
        out << "packed " << grid.tile_rows << 'x' << grid.tile_cols << " tiles of " << n << 'x' << n << ", mode "
            << grid.mode.name() << "\n";
        for (std::size_t tr = 0; tr < grid.tile_rows; ++tr) {
            for (std::size_t tc = 0; tc < grid.tile_cols; ++tc) {
                out << "tile " << tr << ',' << tc << '\n';
                const auto& t = grid.at(tr, tc);
                for (std::size_t r = 0; r < n; ++r) {
                    for (std::size_t c = 0; c < n; ++c) {
                        const auto b = t.bytes(r, c);
                        out << (c ? " " : "") << std::hex << std::setw(2) << std::setfill('0')
                            << static_cast<int>(b) << std::dec << std::setfill(' ') << '(';
                        for (int s = 0; s < grid.mode.nw(); ++s) {
                            out << (s ? "," : "") << unpack_field(b, grid.mode.tag(), s);
                        }
                        out << ')';
                    }
                    out << '\n';
                }
            }
        }
    }

    if (!cfg.verify) return kOk;
    bool ok = true;
    const auto recovered = recover_weights(grid);
    for (std::size_t t = 0; t < mats.size(); ++t) {
        const auto& m = mats[t];
        const auto& r = recovered[t];
        for (std::size_t i = 0; i < r.rows(); ++i) {
            for (std::size_t j = 0; j < r.cols(); ++j) {
                const int want = (i < m.rows() && j < m.cols()) ? m(i, j) : 0;
                if (r(i, j) != want) ok = false;
            }
        }
    }
    if (!cfg.out.empty()) {
        std::ifstream f(cfg.out, std::ios::binary);
        if (!(read_packed_grid(f) == grid)) ok = false;
    }
    (cfg.format == Format::Json ? err : out) << "verify: " << (ok ? "PASS" : "FAIL") << '\n';
    return ok ? kOk : kCheckFailed;
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    struct Row {
        std::size_t n;
        Precision precision;
        Cycle measured;
        std::int64_t model;
        std::size_t passes;
        double gain;
        double peak_tops;
        bool pass;
    };
    std::vector<Row> rows;
    std::mt19937_64 rng(cfg.seed);
    bool all_ok = true;

    for (const auto n : cfg.sizes) {
        std::size_t w8_passes = 0;
        for (const auto precision : kPrecisions) {
            const auto mode = PrecisionMode::full(precision);
            std::vector<WeightTile> tiles;
            std::vector<WeightTile> raw;
            for (int t = 0; t < mode.nw(); ++t) {
                raw.emplace_back(random_matrix(n, n, mode.field_width(), rng), mode.field_width());
                tiles.push_back(permute(raw.back()));
            }
            const auto a = random_matrix(n, n, 8, rng);
            ArrayConfig config;
            config.n = n;
            ArraySim sim(config, mode);
            const auto tile = sim.run_tile(interleave(tiles, mode), a);

            bool values_ok = true;
            for (int t = 0; t < mode.nw() && values_ok; ++t) {
                MatMulJob job{a, {raw[static_cast<std::size_t>(t)].data()}, precision, n};
                values_ok = tile.outputs[static_cast<std::size_t>(t)] == oracle_matmul(job).front();
            }

            const AnalyticParams eq{static_cast<std::int64_t>(n), 16, 2, 8, weight_bits(precision), 1,
                                    mode.reducer_depth()};
            const auto model = adip_latency(eq);
            const auto passes = plan_tiles(n, n, n, 4, precision, n, Fusion::AcrossMatrices).pass_count();
            if (precision == Precision::W8) w8_passes = passes;
            const AnalyticParams peak{static_cast<std::int64_t>(n), 16, 2, 8, weight_bits(precision), 1, 2};

            const bool ok = values_ok && tile.cycles == static_cast<Cycle>(model);
            all_ok = all_ok && ok;
            if (!ok) {
                err << "FAIL: n=" << n << ' ' << mode.name() << ": measured " << tile.cycles << " cycles, model "
                    << model << (values_ok ? "" : ", outputs differ from oracle") << '\n';
            }
            rows.push_back({n, precision, tile.cycles, model, passes,
                            static_cast<double>(w8_passes) / static_cast<double>(passes),
                            peak_throughput(peak, 1e9) / 1e12, ok});
        }
    }

    emit(cfg, out, [&](std::ostream& o) {
        if (cfg.format == Format::Json) {
            ordered_json j = ordered_json::array();
            for (const auto& r : rows) {
                j.push_back({{"size", r.n},
                             {"precision", to_string(r.precision)},
                             {"single_tile_cycles", r.measured},
                             {"model_cycles", r.model},
                             {"passes", r.passes},
                             {"throughput_gain", r.gain},
                             {"peak_tops", r.peak_tops},
                             {"status", r.pass ? "PASS" : "FAIL"}});
            }
            o << j.dump(2) << '\n';
            return;
        }
        o << "size,precision,single_tile_cycles,model_cycles,passes,throughput_gain,peak_tops,status\n";
        for (const auto& r : rows) {
            o << r.n << ',' << to_string(r.precision) << ',' << r.measured << ',' << r.model << ',' << r.passes
              << ',' << r.gain << ',' << r.peak_tops << ',' << (r.pass ? "PASS" : "FAIL") << '\n';
        }
    });
    return all_ok ? kOk : kCheckFailed;
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        cfg.validate();
        if (cfg.subcommand == "analytic") return cmd_analytic(cfg, out, err);
        if (cfg.subcommand == "simulate") return cmd_simulate(cfg, out, err);
        if (cfg.subcommand == "workload") return cmd_workload(cfg, out, err);
        if (cfg.subcommand == "interleave") return cmd_interleave(cfg, out, err);
        if (cfg.subcommand == "sweep") return cmd_sweep(cfg, out, err);
        err << "error: unknown subcommand '" << cfg.subcommand << "'\n";
        return kBadInput;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kBadInput;
    }
}

}  // namespace adip::cli
