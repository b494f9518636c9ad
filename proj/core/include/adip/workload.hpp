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
 * @file workload.hpp
 * @brief Matmul stages of multi-head attention and their operation counts.
 *
 * Per layer, with sequence length s:
 *
 *   QProj, KProj, VProj  X (s x d_model) * W (d_model x d_model)    x1
 *   Scores               Q_i (s x d_k) * K_i^T (d_k x s)            x heads
 *   Attn                 S_i (s x s) * V_i (s x d_k)                x heads
 *   OutProj              concat (s x d_model) * W_O (d_model x d_model) x1
 *
 * One multiply plus one add counts as two operations. Softmax and scaling
 * are not matmuls and are not counted.
 */

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace adip {

struct MhaConfig {
    std::string name;
    std::int64_t layers = 0;
    std::int64_t d_model = 0;
    std::int64_t heads = 0;
    std::int64_t d_k = 0;
    std::int64_t seq_len = 0;
    int weight_bits = 8;

    /// Throws FormatError on non-positive geometry or unsupported weight bits.
    void validate() const;
};

enum class Stage { QProj, KProj, VProj, Scores, Attn, OutProj };
enum class StageKind { Projection, ActAct };

[[nodiscard]] std::string_view to_string(Stage s) noexcept;
[[nodiscard]] StageKind kind_of(Stage s) noexcept;

struct StageSpec {
    Stage stage = Stage::QProj;
    StageKind kind = StageKind::Projection;
    std::int64_t m = 0;  ///< rows of the left operand
    std::int64_t k = 0;  ///< reduction dimension
    std::int64_t p = 0;  ///< columns of the right operand
    std::int64_t count = 1;  ///< instances per layer (heads for act-act stages)
    std::int64_t layers = 1;
    int weight_bits = 8;     ///< precision of the right operand; act-act is always 8

    [[nodiscard]] std::int64_t ops_per_instance() const noexcept { return 2 * m * k * p; }
    [[nodiscard]] std::int64_t ops_per_layer() const noexcept { return ops_per_instance() * count; }
    [[nodiscard]] std::int64_t total_ops() const noexcept { return ops_per_layer() * layers; }
};

/// GPT-2 Medium (8-bit), BERT Large (4-bit), BitNet-1.58B (2-bit).
[[nodiscard]] std::vector<MhaConfig> builtin_models();
/// Looks up by name ("gpt2-medium", "bert-large", "bitnet"); throws FormatError if unknown.
[[nodiscard]] MhaConfig builtin_model(std::string_view name);

[[nodiscard]] std::vector<StageSpec> stages(const MhaConfig& cfg);
[[nodiscard]] std::int64_t total_ops(const MhaConfig& cfg);

struct StageShare {
    Stage stage;
    double fraction;
};

/// Share of the model's operations per stage; sums to 1.
[[nodiscard]] std::vector<StageShare> breakdown(const MhaConfig& cfg);
[[nodiscard]] double projection_fraction(const MhaConfig& cfg);

/// Parses `{name, layers, d_model, heads, d_k, seq_len, weight_bits}`.
/// Throws FormatError on malformed input.
[[nodiscard]] MhaConfig parse_config_json(std::string_view text);
[[nodiscard]] MhaConfig load_config_json(std::istream& in);

}  // namespace adip
