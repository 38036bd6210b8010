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

#pragma once

// The invariant suites behind the `verify` subcommand, plus the seeded
// random-scenario generators they share with the test suites.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "qtele/channel_effects.hpp"
#include "qtele/random.hpp"
#include "qtele/teleport_engine.hpp"

namespace qtele {

/// Minimal back-action family with `outcomes` non-commuting branches:
/// E(l) = sqrt(S^-1/2 G_l S^-1/2) for random PSD G_l and S = sum G_l.
MeasurementFamily random_measurement_family(std::size_t n, std::size_t outcomes, Rng& rng);

/// Trace-preserving Kraus channel K_k = A_k S^-1/2, S = sum A_k^dag A_k.
KrausChannel random_kraus_channel(std::size_t n, std::size_t branches, Rng& rng);

/// One of: nothing, a unitary, a strength family in a random basis, a
/// random measurement family, a random Kraus channel.
ChannelEffect random_effect(std::size_t n, Rng& rng);

/// Random input, random u0, Weyl Bell family, random effects on R and B.
ScenarioConfig random_scenario(std::size_t n, Rng& rng);

enum class VerifyDepth { quick, full };

/// Test hook: deliberately broken families routed through every suite.
enum class Corruption { none, bell, measurement };

struct VerifyOptions {
  VerifyDepth depth = VerifyDepth::quick;
  std::size_t workers = 1;
  std::uint64_t seed = 0;
  Corruption corrupt = Corruption::none;
};

struct CheckResult {
  std::string name;
  double max_deviation = 0.0;
  double threshold = 0.0;
  bool passed = false;
};

struct VerifyReport {
  std::vector<CheckResult> checks;

  bool passed() const;
};

VerifyReport run_verify(const VerifyOptions& options);

/// One line per check: PASS/FAIL, name, max deviation and threshold.
std::string format_report(const VerifyReport& report);

}  // namespace qtele
