// Copyright 2026 The qtele Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>

#include <gtest/gtest.h>

#include "qtele/run_spec.hpp"
#include "test_util.hpp"

namespace qtele {
namespace {

std::string field_of(const std::string& text, const ParseOptions& opts = {}) {
  try {
    parse_config(text, opts);
  } catch (const ConfigError& e) {
    return e.field();
  }
  return "<accepted>";
}

TEST(ParseConfig, MinimalDefaults) {
  const RunSpec spec = parse_config(R"({"n": 3})");
  EXPECT_EQ(spec.n, 3u);
  EXPECT_MATRIX_NEAR(spec.u0, identity(3), 0.0);
  EXPECT_EQ(spec.bell.size(), 9u);
  EXPECT_FALSE(spec.has_eavesdropper());
  EXPECT_TRUE(spec.record_b_outcomes);
  EXPECT_EQ(spec.distinguish.size(), 2u);
  EXPECT_FALSE(spec.output_path.has_value());
  EXPECT_TRUE(std::holds_alternative<std::monostate>(spec.effect_b));
}

TEST(ParseConfig, ThetaOutOfRangeNamesField) {
  EXPECT_EQ(field_of(R"({"n": 2, "eavesdrop": {"theta": 1.5}})"), "eavesdrop.theta");
  EXPECT_EQ(field_of(R"({"n": 2, "eavesdrop": {"theta": -0.1}})"), "eavesdrop.theta");
  try {
    parse_config(R"({"n": 2, "eavesdrop": {"theta": 1.5}})");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("eavesdrop.theta"), std::string::npos);
  }
}

TEST(ParseConfig, RejectsBadDimensionAndUnknownKeys) {
  EXPECT_EQ(field_of(R"({"n": 1})"), "n");
  EXPECT_EQ(field_of(R"({})"), "n");
  EXPECT_NE(field_of(R"({"n": 2, "colour": 1})"), "<accepted>");
  EXPECT_NE(field_of(R"({"n": 2, "eavesdrop": {"theta": 0.5, "x": 0}})"), "<accepted>");
  EXPECT_THROW(parse_config("{not json"), ConfigError);
}

TEST(ParseConfig, UnnormalizedInputWarnsOrFails) {
  const std::string text = R"({"n": 2, "input": [1, 1]})";
  const RunSpec spec = parse_config(text);
  EXPECT_EQ(spec.warnings.size(), 1u);
  EXPECT_NEAR(std::abs(spec.input.amplitudes()[0]), 1.0 / std::sqrt(2.0), 1e-15);
  ParseOptions strict;
  strict.strict = true;
  EXPECT_EQ(field_of(text, strict), "input");
}

TEST(ParseConfig, ComplexAmplitudesAndLengthCheck) {
  const RunSpec spec = parse_config(R"({"n": 2, "input": [[0.6, 0], [0, 0.8]]})");
  EXPECT_TRUE(spec.warnings.empty());
  EXPECT_NEAR(spec.input.amplitudes()[1].imag(), 0.8, 1e-15);
  EXPECT_EQ(field_of(R"({"n": 3, "input": [1, 0]})"), "input");
}

TEST(ParseConfig, MatrixResourceMustBeUnitary) {
  const RunSpec spec = parse_config(R"({"n": 2, "u0": [[0, 1], [1, 0]]})");
  EXPECT_MATRIX_NEAR(spec.u0, shift_matrix(2), 0.0);
  EXPECT_EQ(field_of(R"({"n": 2, "u0": [[1, 1], [0, 1]]})"), "u0");
}

TEST(ParseConfig, RandomResourceFollowsSeed) {
  const std::string text = R"({"n": 3, "u0": "random", "seed": 4})";
  const RunSpec a = parse_config(text), b = parse_config(text);
  EXPECT_MATRIX_NEAR(a.u0, b.u0, 0.0);
  EXPECT_TRUE(is_unitary(a.u0, Tolerance(1e-10)));
  ParseOptions other;
  other.seed = 5;
  EXPECT_GT(max_abs(parse_config(text, other).u0 - a.u0), 1e-3);
}

TEST(ParseConfig, ExplicitBellFamilyIsValidated) {
  const std::string ok = R"({"n": 2, "bell": [
    {"label": "I", "unitary": [[1, 0], [0, 1]]},
    {"label": "X", "unitary": [[0, 1], [1, 0]]},
    {"label": "Z", "unitary": [[1, 0], [0, -1]]},
    {"label": "Y", "unitary": [[0, [0, -1]], [[0, 1], 0]]}]})";
  EXPECT_EQ(parse_config(ok).bell.index_of("Y"), 3u);
  const std::string missing = R"({"n": 2, "bell": [
    {"label": "I", "unitary": [[1, 0], [0, 1]]},
    {"label": "X", "unitary": [[0, 1], [1, 0]]}]})";
  EXPECT_EQ(field_of(missing), "bell");
}

TEST(ParseConfig, EavesdropperBasisAndSweep) {
  const RunSpec fourier = parse_config(R"({"n": 3, "eavesdrop": {"basis": "fourier", "theta": 0.5}})");
  EXPECT_TRUE(fourier.has_eavesdropper());
  EXPECT_NEAR(std::abs(fourier.eavesdrop_basis(1, 2)), 1.0 / std::sqrt(3.0), 1e-14);
  const RunSpec sweep = parse_config(R"({"n": 2, "eavesdrop": {"theta_sweep": [0, 1, 5]}})");
  ASSERT_TRUE(sweep.theta_sweep.has_value());
  const auto pts = sweep.theta_sweep->points();
  ASSERT_EQ(pts.size(), 5u);
  EXPECT_DOUBLE_EQ(pts[0], 0.0);
  EXPECT_DOUBLE_EQ(pts[2], 0.5);
  EXPECT_DOUBLE_EQ(pts[4], 1.0);
  EXPECT_NE(field_of(R"({"n": 2, "eavesdrop": {"theta": 0.1, "theta_sweep": [0, 1, 3]}})"), "<accepted>");
}

TEST(ThetaSweep, SinglePoint) {
  const auto pts = ThetaSweep{0.3, 0.3, 1}.points();
  ASSERT_EQ(pts.size(), 1u);
  EXPECT_DOUBLE_EQ(pts[0], 0.3);
}

TEST(ParseConfig, EffectOnOutput) {
  const RunSpec u = parse_config(R"({"n": 2, "effect_b": {"unitary": [[0, 1], [1, 0]]}})");
  EXPECT_TRUE(std::holds_alternative<EffectOperator>(u.effect_b));
  const RunSpec k = parse_config(
      R"({"n": 2, "effect_b": {"kraus": [[[1, 0], [0, 0.6]], [[0, 0], [0, 0.8]]]}})");
  EXPECT_TRUE(std::holds_alternative<KrausChannel>(k.effect_b));
  EXPECT_EQ(field_of(R"({"n": 2, "effect_b": {"kraus": [[[1, 0], [0, 1]], [[0, 0], [0, 0.8]]]}})"),
            "effect_b.kraus");
}

TEST(NamedInput, KnownNames) {
  EXPECT_NEAR(named_input("basis:2", 3).fidelity(PureState::basis(3, 2)), 1.0, 1e-15);
  EXPECT_NEAR(std::abs(named_input("plus-uniform", 4).amplitudes()[3]), 0.5, 1e-15);
  EXPECT_NEAR(named_input("random:9", 3).fidelity(named_input("random:9", 3)), 1.0, 1e-14);
  EXPECT_THROW(named_input("basis:3", 3), Error);
  EXPECT_THROW(named_input("ghz", 3), Error);
}

}  // namespace
}  // namespace qtele
