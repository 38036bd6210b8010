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

// Eavesdropping on the reference channel with a minimal back-action
// measurement {E(l)}: the effective operators P(l, m) on the teleported
// state, their statistics and the resulting loss of fidelity.

#include <cstddef>
#include <optional>
#include <vector>

#include "qtele/bell_structures.hpp"
#include "qtele/channel_effects.hpp"
#include "qtele/teleport_engine.hpp"
#include "qtele/tensor_core.hpp"

namespace qtele {

struct EavesdropConfig {
  Matrix u0;
  BellFamily bell;
  MeasurementFamily family;
  PureState input;

  std::size_t dim() const { return bell.dim(); }

  /// Throws DimensionError when the pieces disagree on N.
  void validate() const;

  /// The equivalent engine scenario: `family` on R, nothing on B.
  ScenarioConfig scenario() const;
};

/// P(l, m) = sqrt(chi(m))/N * U(m) (u0^-1 E(l) u0)^T U(m)^-1.
Matrix eavesdrop_operator(const MeasurementFamily& family, const BellFamily& bell,
                          const Matrix& u0, std::size_t l, std::size_t m);

/// The mirrored branch (u0^-1 E(l) u0)^T acting on B.
Matrix mirrored_branch(const MeasurementFamily& family, const Matrix& u0, std::size_t l);

/// <psi| P^dag P |psi>, which is <psi|P^2|psi> for self-adjoint P.
double joint_probability(const EavesdropConfig& cfg, std::size_t l, std::size_t m);

/// P|psi> / sqrt(p); NullBranchError when p <= 1e-14.
PureState conditional_output(const EavesdropConfig& cfg, std::size_t l, std::size_t m);

/// |<psi|P|psi>|^2 / p; NullBranchError when p <= 1e-14.
double conditional_fidelity(const EavesdropConfig& cfg, std::size_t l, std::size_t m);

/// sum_{l,m} |<psi|P(l,m)|psi>|^2
double total_fidelity(const EavesdropConfig& cfg);

std::vector<double> marginal_l(const EavesdropConfig& cfg);
std::vector<double> marginal_m(const EavesdropConfig& cfg);

/// Input-independent prediction Tr{E(l)^2}/N for each l.
std::vector<double> predicted_marginal_l(const MeasurementFamily& family);
/// chi(m)/N^2 for each m.
std::vector<double> predicted_marginal_m(const BellFamily& bell);

struct SequentialDecompositionReport {
  /// max |sum_{l,m} U^-1 P |psi><psi| P U - 1/N|
  double full_deviation = 0.0;
  /// max |sum_l E_B(l) (1/N) E_B(l) - 1/N|
  double regrouped_deviation = 0.0;

  double max_deviation() const { return std::max(full_deviation, regrouped_deviation); }
};

SequentialDecompositionReport sequential_decomposition_check(const EavesdropConfig& cfg);

struct ProjectiveCaseReport {
  /// Mirrored eigenstates |phi_l> on B, one per outcome l.
  std::vector<PureState> eigenstates;
  /// (chi(m)/N^2) |<phi_l|U(m)^-1|psi>|^2, indexed [l][m].
  std::vector<std::vector<double>> probability;
  /// U(m) L_B U(m)^-1 per m, with L_B = sum_l l |phi_l><phi_l|.
  std::vector<Matrix> measured_observable;
  Matrix observable_b;
};

/// Throws InvalidFamilyError unless every E(l) is a rank-1 projector.
ProjectiveCaseReport projective_case_analysis(const EavesdropConfig& cfg);

/// Total-variation distance between two outcome distributions.
double total_variation(const std::vector<double>& p, const std::vector<double>& q);

/// Flattened p(l, m) table, l-major.
std::vector<double> joint_distribution(const EavesdropConfig& cfg);

/// Pairwise total-variation distances between the p(l, m) tables produced
/// by each input. Throws RangeError for fewer than two inputs.
Eigen::MatrixXd distinguishability(const EavesdropConfig& cfg, const std::vector<PureState>& inputs);

struct EavesdropEntry {
  std::size_t l = 0;
  std::size_t m = 0;
  Matrix op;
  double probability = 0.0;
  /// Empty for null branches.
  std::optional<double> conditional_fidelity;
  bool self_adjoint = false;
};

struct EavesdropReport {
  std::vector<EavesdropEntry> entries;  ///< ordered by (l, m)
  std::vector<double> p_l;
  std::vector<double> p_m;
  double total_fidelity = 0.0;
  /// Largest |P - P^dag| over all entries.
  double max_self_adjoint_deviation = 0.0;
};

EavesdropReport analyze(const EavesdropConfig& cfg, Tolerance hermitian_tol = Tolerance(1e-9));

}  // namespace qtele
