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

#include <gtest/gtest.h>

#include <sstream>

#include "adip/error.hpp"
#include "adip/workload.hpp"

namespace adip {
namespace {

// Per layer: four s*d*d projections plus two s*s*d_k products per head, 2 ops per MAC.
std::int64_t closed_form_ops(const MhaConfig& c) {
    const auto s = c.seq_len, d = c.d_model;
    return c.layers * 2 * (4 * s * d * d + 2 * s * s * c.heads * c.d_k);
}

TEST(Workload, TotalsMatchReportedGop) {
    const auto gpt2 = builtin_model("gpt2-medium");
    const auto bert = builtin_model("bert-large");
    const auto bitnet = builtin_model("bitnet");
    EXPECT_NEAR(static_cast<double>(total_ops(gpt2)), 309.24e9, 309.24e9 * 0.005);
    EXPECT_NEAR(static_cast<double>(total_ops(bert)), 128.85e9, 128.85e9 * 0.005);
    EXPECT_NEAR(static_cast<double>(total_ops(bitnet)), 4.51e12, 4.51e12 * 0.005);
    for (const auto& m : builtin_models()) EXPECT_EQ(total_ops(m), closed_form_ops(m)) << m.name;
}

TEST(Workload, StageShapes) {
    const auto st = stages(builtin_model("bert"));
    ASSERT_EQ(st.size(), 6u);
    EXPECT_EQ(st[0].stage, Stage::QProj);
    EXPECT_EQ(st[0].m, 512);
    EXPECT_EQ(st[0].k, 1024);
    EXPECT_EQ(st[0].p, 1024);
    EXPECT_EQ(st[0].weight_bits, 4);
    EXPECT_EQ(st[3].stage, Stage::Scores);
    EXPECT_EQ(st[3].kind, StageKind::ActAct);
    EXPECT_EQ(st[3].k, 64);
    EXPECT_EQ(st[3].p, 512);
    EXPECT_EQ(st[3].count, 16);
    EXPECT_EQ(st[3].weight_bits, 8);
    EXPECT_EQ(st[4].stage, Stage::Attn);
    EXPECT_EQ(st[4].k, 512);
    EXPECT_EQ(st[4].p, 64);
    EXPECT_EQ(st[5].stage, Stage::OutProj);
    EXPECT_EQ(to_string(Stage::OutProj), "out_proj");
}

TEST(Workload, ProjectionFractions) {
    // 2d / (2d + s)
    EXPECT_NEAR(projection_fraction(builtin_model("gpt2")), 2.0 / 3.0, 1e-12);
    EXPECT_NEAR(projection_fraction(builtin_model("bert")), 0.8, 1e-12);
    EXPECT_NEAR(projection_fraction(builtin_model("bitnet")), 5120.0 / 7168.0, 1e-12);
    double sum = 0.0;
    for (const auto& s : breakdown(builtin_model("bitnet"))) sum += s.fraction;
    EXPECT_NEAR(sum, 1.0, 1e-12);
}

TEST(Workload, Aliases) {
    EXPECT_EQ(builtin_model("bitnet-1.58b").name, "bitnet");
    EXPECT_THROW((void)builtin_model("llama"), FormatError);
}

TEST(Workload, JsonConfig) {
    const auto c = parse_config_json(
        R"({"name":"tiny","layers":2,"d_model":64,"heads":4,"d_k":16,"seq_len":32,"weight_bits":4})");
    EXPECT_EQ(c.name, "tiny");
    EXPECT_EQ(c.heads, 4);
    EXPECT_EQ(total_ops(c), closed_form_ops(c));
    std::istringstream in(R"({"name":"x","layers":1,"d_model":8,"heads":1,"d_k":8,"seq_len":4,"weight_bits":2})");
    EXPECT_EQ(load_config_json(in).weight_bits, 2);
}

TEST(Workload, JsonErrors) {
    EXPECT_THROW((void)parse_config_json("{"), FormatError);
    EXPECT_THROW((void)parse_config_json(R"({"name":"x"})"), FormatError);
    EXPECT_THROW((void)parse_config_json(
                     R"({"name":"x","layers":1,"d_model":8,"heads":1,"d_k":8,"seq_len":4,"weight_bits":3})"),
                 FormatError);
    EXPECT_THROW((void)parse_config_json(
                     R"({"name":"x","layers":0,"d_model":8,"heads":1,"d_k":8,"seq_len":4,"weight_bits":8})"),
                 FormatError);
}

}  // namespace
}  // namespace adip
