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

// Teleportation executed two ways: the brute-force tripartite evolution on
// A (x) R (x) B (the oracle) and the N x N transfer operators acting on the
// input directly (the fast path).
//
// Raw output convention: projecting onto Bell outcome m leaves B in
// sqrt(chi(m))/N * F_B * E_B * U(m)^-1 |psi_in>. The receiver's correction
// therefore applies U(m), which turns the raw output into T_out(m)|psi_in>
// with T_out(m) = sqrt(chi(m))/N * U(m) F_B E_B U(m)^-1 and
// E_B = (u0^-1 E_R u0)^T.

#include <cstddef>
#include <optional>
#include <vector>

#include "qtele/bell_structures.hpp"
#include "qtele/channel_effects.hpp"
#include "qtele/tensor_core.hpp"

namespace qtele {

/// Branches with probability below this carry no normalized output.
inline constexpr double kNullBranchProbability = 1e-14;

struct ScenarioConfig {
  std::size_t n = 2;
  Matrix u0;
  BellFamily bell;
  PureState input;
  ChannelEffect effect_r;
  ChannelEffect effect_b;
  bool apply_correction = true;
  /// When false, the outcomes of a branching effect on B are not available
  /// to the receiver (see `group_unrecorded`).
  bool record_b_outcomes = true;

  /// Ideal teleportation of `input` with the Weyl family and u0 = 1.
  static ScenarioConfig ideal(const PureState& input);

  /// Throws DimensionError / NotUnitaryError when the pieces do not fit.
  void validate() const;
};

struct TeleportRecord {
  std::size_t m = 0;
  /// Branch index of the effect on R; empty when that effect does not branch.
  std::optional<std::size_t> l;
  /// Branch index of the effect on B; empty when that effect does not branch.
  std::optional<std::size_t> branch;
  /// Normalized output; empty for null branches.
  std::optional<PureState> output;
  double probability = 0.0;
  Vector raw_output;
};

/// Order in which the oracle applies the channel effects while preparing
/// the shared state. They act on different factors, so the records must not
/// depend on it.
enum class EffectOrder { reference_first, output_first };

/// Ground truth: materializes the N^3 state for every (l, branch) pair and
/// projects it onto each Bell outcome. Records are ordered by (l, m, branch).
std::vector<TeleportRecord> run_oracle(const ScenarioConfig& cfg,
                                       EffectOrder order = EffectOrder::reference_first);

/// T_out for Bell outcome m and the selected branches of the effects on R
/// and B. Selectors may be omitted for non-branching effects.
Matrix transfer_operator(const ScenarioConfig& cfg, std::size_t m,
                         std::optional<std::size_t> l = std::nullopt,
                         std::optional<std::size_t> branch = std::nullopt);

/// Same records as `run_oracle`, from N x N transfer operators only.
std::vector<TeleportRecord> fast_run(const ScenarioConfig& cfg);

struct RecordComparison {
  bool same_labels = false;
  double max_probability_deviation = 0.0;
  /// Over raw (unnormalized) outputs.
  double max_raw_deviation = 0.0;
  /// Over normalized outputs of non-null branches.
  double max_output_deviation = 0.0;

  bool agrees(double tol) const {
    return same_labels && max_probability_deviation <= tol && max_raw_deviation <= tol &&
           max_output_deviation <= tol;
  }
};

RecordComparison compare_records(const std::vector<TeleportRecord>& a,
                                 const std::vector<TeleportRecord>& b);

struct DeviationReport {
  Matrix reconstructed;
  double max_deviation = 0.0;
};

/// sum_m chi(m)/N^2 U(m)^-1 |psi><psi| U(m) compared against 1/N.
DeviationReport ideal_decomposition_check(const ScenarioConfig& cfg);

/// Receiver-side view when effect_b outcomes are not recorded: the B
/// branches of each (l, m) merge into one mixed output.
struct MixedRecord {
  std::size_t m = 0;
  std::optional<std::size_t> l;
  Matrix density;  ///< unnormalized: sum over branches of |raw><raw|
  double probability = 0.0;
  /// <psi|rho|psi> / p; empty for null branches.
  std::optional<double> fidelity;
};

std::vector<MixedRecord> group_unrecorded(const std::vector<TeleportRecord>& records,
                                          const PureState& input);

}  // namespace qtele
