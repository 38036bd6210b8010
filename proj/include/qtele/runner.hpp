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

// Batch runs behind the `teleport` and `sweep` subcommands. Every point is
// computed on the fast path and checked against the full-state oracle (and,
// for a bare eavesdropper, against the closed-form P(l, m) statistics)
// before anything is reported.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "qtele/run_spec.hpp"
#include "qtele/teleport_engine.hpp"

namespace qtele {

/// Raised when a computed result breaks an invariant it must satisfy.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

struct RunOptions {
  std::size_t workers = 1;
  Tolerance tolerance{};
  /// Oracle / fast-path / closed-form agreement and probability sums.
  double agreement_tolerance = 1e-9;
};

/// Engine scenario for `spec` with the strength-family eavesdropper at
/// `theta` (no eavesdropper when empty).
ScenarioConfig scenario_for(const RunSpec& spec, std::optional<double> theta,
                            const std::optional<PureState>& input = std::nullopt);

struct TeleportRow {
  enum class Kind { joint, marginal_l, marginal_m, total };
  Kind kind = Kind::joint;
  std::optional<std::size_t> l;
  std::optional<std::string> m;
  std::optional<std::size_t> branch;
  std::optional<double> probability;
  std::optional<double> fidelity;
};

struct TeleportResult {
  std::vector<TeleportRow> rows;
  std::vector<double> p_l;
  std::vector<double> p_m;
  double total_fidelity = 0.0;
  double probability_sum = 0.0;
  /// Largest oracle / fast-path disagreement seen.
  double oracle_deviation = 0.0;
};

/// Single analysis. Needs a fixed theta (or no eavesdropper). Throws
/// ConfigError for a sweep spec and InvariantViolation on failed checks.
TeleportResult run_teleport(const RunSpec& spec, const RunOptions& options = {});

struct SweepRow {
  double theta = 0.0;
  double total_fidelity = 0.0;
  double distinguishability = 0.0;
};

/// One row per theta in ascending order. A spec with a fixed theta is a
/// one-point sweep.
std::vector<SweepRow> run_sweep(const RunSpec& spec, const RunOptions& options = {});

/// 12 significant digits, the CSV number format.
std::string format_number(double value);

std::string teleport_csv(const TeleportResult& result);
std::string teleport_summary(const RunSpec& spec, const TeleportResult& result);
std::string sweep_csv(const std::vector<SweepRow>& rows);

}  // namespace qtele
