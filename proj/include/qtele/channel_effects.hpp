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

// Effects acting on the entanglement distribution channels: unitaries,
// minimal back-action measurement families and finite Kraus mixtures.

#include <cstddef>
#include <optional>
#include <variant>
#include <vector>

#include "qtele/tensor_core.hpp"

namespace qtele {

/// Completeness relations (sum E^2 = 1, sum K^dag K = 1) are enforced to
/// this max-norm deviation.
inline constexpr double kEffectCompletenessTolerance = 1e-9;

enum class EffectKind { unitary, measurement_branch, generic };

struct EffectOperator {
  std::optional<std::size_t> label;
  Matrix matrix;
  EffectKind kind = EffectKind::generic;

  std::size_t dim() const { return static_cast<std::size_t>(matrix.rows()); }
};

/// Self-adjoint PSD branches E(l) with sum_l E(l)^2 = 1.
class MeasurementFamily {
 public:
  /// Validates every branch and the completeness relation.
  static MeasurementFamily from_branches(std::vector<Matrix> branches);

  /// No completeness check; for exercising diagnostics only.
  static MeasurementFamily unchecked(std::vector<Matrix> branches);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return branches_.size(); }
  const std::vector<EffectOperator>& branches() const { return branches_; }
  const Matrix& branch(std::size_t l) const;

 private:
  MeasurementFamily(std::vector<Matrix> branches, bool check_completeness);

  std::size_t dim_ = 0;
  std::vector<EffectOperator> branches_;
};

/// Decoherence as a finite list of Kraus branches with sum K^dag K = 1.
class KrausChannel {
 public:
  explicit KrausChannel(std::vector<EffectOperator> branches);

  std::size_t dim() const { return branches_.front().dim(); }
  std::size_t size() const { return branches_.size(); }
  const std::vector<EffectOperator>& branches() const { return branches_; }

 private:
  std::vector<EffectOperator> branches_;
};

/// n branches E(l) = sqrt((1-theta)/n * 1 + theta |b_l><b_l|), where |b_l>
/// is column l of `basis`. theta = 0 gives E(l) = 1/sqrt(n), theta = 1 the
/// projectors onto the basis.
MeasurementFamily strength_family(std::size_t n, const Matrix& basis, double theta);
MeasurementFamily strength_family(std::size_t n, double theta);

/// Throws NotUnitaryError for a non-unitary input.
EffectOperator unitary_effect(const Matrix& u);

/// Throws InvalidFamilyError when the branches are not trace preserving.
std::vector<EffectOperator> kraus_mixture(const std::vector<Matrix>& branches);

struct FamilyReport {
  double completeness_deviation = 0.0;
  std::vector<double> hermitian_deviation;
  std::vector<double> min_eigenvalue;
  bool passed = false;
};

FamilyReport validate_family(const MeasurementFamily& family, Tolerance tol = {});

/// What acts on one distribution channel. Each alternative expands into a
/// list of branch operators; the empty alternative is the identity.
using ChannelEffect = std::variant<std::monostate, EffectOperator, MeasurementFamily, KrausChannel>;

/// The operators applied on each branch of `effect`, in label order.
std::vector<Matrix> branch_operators(const ChannelEffect& effect, std::size_t n);

/// True when `effect` yields a labelled outcome per branch (measurement or
/// Kraus); false for the identity and single unitaries.
bool is_branching(const ChannelEffect& effect);

}  // namespace qtele
