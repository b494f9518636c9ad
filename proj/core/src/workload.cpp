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

#include "adip/workload.hpp"

#include <iterator>
#include <istream>

#include <json.hpp>

#include "adip/error.hpp"

namespace adip {

void MhaConfig::validate() const {
    if (layers <= 0 || d_model <= 0 || heads <= 0 || d_k <= 0 || seq_len <= 0) {
        throw FormatError("model '" + name + "': geometry fields must be positive");
    }
    if (weight_bits != 8 && weight_bits != 4 && weight_bits != 2) {
        throw FormatError("model '" + name + "': weight_bits must be 8, 4 or 2");
    }
}

std::string_view to_string(Stage s) noexcept {
    switch (s) {
        case Stage::QProj: return "q_proj";
        case Stage::KProj: return "k_proj";
        case Stage::VProj: return "v_proj";
        case Stage::Scores: return "scores";
        case Stage::Attn: return "attn";
        case Stage::OutProj: return "out_proj";
    }
    return "?";
}

StageKind kind_of(Stage s) noexcept {
    return (s == Stage::Scores || s == Stage::Attn) ? StageKind::ActAct : StageKind::Projection;
}

std::vector<MhaConfig> builtin_models() {
    return {
        {"gpt2-medium", 24, 1024, 16, 64, 1024, 8},
        {"bert-large", 24, 1024, 16, 64, 512, 4},
        {"bitnet", 30, 2560, 20, 128, 2048, 2},
    };
}

MhaConfig builtin_model(std::string_view name) {
    for (auto& cfg : builtin_models()) {
        if (cfg.name == name) return cfg;
    }
    if (name == "gpt2") return builtin_model("gpt2-medium");
    if (name == "bert") return builtin_model("bert-large");
    if (name == "bitnet-1.58b") return builtin_model("bitnet");
    throw FormatError("unknown model '" + std::string(name) + "'");
}

std::vector<StageSpec> stages(const MhaConfig& cfg) {
    cfg.validate();
    const auto s = cfg.seq_len, d = cfg.d_model, dk = cfg.d_k, h = cfg.heads, l = cfg.layers;
    const int wb = cfg.weight_bits;
    auto make = [&](Stage st, std::int64_t m, std::int64_t k, std::int64_t p, std::int64_t count) {
        const StageKind kind = kind_of(st);
        return StageSpec{st, kind, m, k, p, count, l, kind == StageKind::Projection ? wb : 8};
    };
    return {
        make(Stage::QProj, s, d, d, 1),   make(Stage::KProj, s, d, d, 1), make(Stage::VProj, s, d, d, 1),
        make(Stage::Scores, s, dk, s, h), make(Stage::Attn, s, s, dk, h), make(Stage::OutProj, s, d, d, 1),
    };
}

std::int64_t total_ops(const MhaConfig& cfg) {
    std::int64_t sum = 0;
    for (const auto& st : stages(cfg)) sum += st.total_ops();
    return sum;
}

std::vector<StageShare> breakdown(const MhaConfig& cfg) {
    const double total = static_cast<double>(total_ops(cfg));
    std::vector<StageShare> out;
    for (const auto& st : stages(cfg)) out.push_back({st.stage, static_cast<double>(st.total_ops()) / total});
    return out;
}

double projection_fraction(const MhaConfig& cfg) {
    double f = 0.0;
    for (const auto& share : breakdown(cfg)) {
        if (kind_of(share.stage) == StageKind::Projection) f += share.fraction;
    }
    return f;
}

MhaConfig parse_config_json(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("model config: ") + e.what());
    }
    MhaConfig cfg;
    try {
        cfg.name = j.at("name").get<std::string>();
        cfg.layers = j.at("layers").get<std::int64_t>();
        cfg.d_model = j.at("d_model").get<std::int64_t>();
        cfg.heads = j.at("heads").get<std::int64_t>();
        cfg.d_k = j.at("d_k").get<std::int64_t>();
        cfg.seq_len = j.at("seq_len").get<std::int64_t>();
        cfg.weight_bits = j.at("weight_bits").get<int>();
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("model config: ") + e.what());
    }
    cfg.validate();
    return cfg;
}

MhaConfig load_config_json(std::istream& in) {
    const std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    return parse_config_json(text);
}

}  // namespace adip
