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

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace adip::cli {

enum class Format { Csv, Json };

/// Exit codes shared by every command.
inline constexpr int kOk = 0;
inline constexpr int kCheckFailed = 1;
inline constexpr int kBadInput = 2;

struct RunConfig {
    std::string subcommand;
    std::size_t size = 0;  ///< 0 selects the command's default array size
    std::string mode = "w8";
    int nw = -1;           ///< -1 selects every slot of the mode
    std::uint64_t seed = 1;
    std::string out;       ///< empty writes to the output stream
    Format format = Format::Csv;
    bool trace = false;
    std::optional<bool> overlap_weights;
    bool count_output_writes = false;

    // simulate
    std::size_t m = 0, k = 0, p = 0;     ///< 0 selects 2n+1 / 2n+3 / 2n-1
    std::string a_file;
    std::vector<std::string> b_files;

    // workload
    std::string model = "bitnet";       ///< builtin name or JSON file path

    // interleave
    bool verify = false;
    std::vector<std::string> inputs;

    // sweep
    std::vector<std::size_t> sizes{4, 8, 16, 32, 64};

    /// Throws adip::Error on an invalid combination.
    void validate() const;
};

/// Each command writes its report to `out`, diagnostics to `err`, and returns
/// an exit code. adip::Error escapes for invalid input.
int cmd_analytic(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_simulate(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_workload(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_interleave(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Dispatches on cfg.subcommand and maps adip::Error to kBadInput.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace adip::cli
