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

#include "qtele/channel_effects.hpp"

#include <string>
#include <utility>

namespace qtele {
namespace {

constexpr double kBranchTolerance = 1e-10;

}  // namespace

MeasurementFamily::MeasurementFamily(std::vector<Matrix> branches, bool check_completeness) {
  if (branches.empty()) throw InvalidFamilyError("measurement family has no branches");
  dim_ = static_cast<std::size_t>(branches.front().rows());
  const Tolerance tol(kBranchTolerance);
  Matrix sum = Matrix::Zero(branches.front().rows(), branches.front().rows());
  for (std::size_t l = 0; l < branches.size(); ++l) {
    Matrix& e = branches[l];
    require_square(e, "measurement branch");
    if (static_cast<std::size_t>(e.rows()) != dim_) {
      throw DimensionError("measurement branches have mismatched dimensions");
    }
    const PredicateReport pred = check_predicates(e, tol);
    if (!pred.is_hermitian || !pred.is_psd) {
      throw InvalidFamilyError("measurement branch " + std::to_string(l) +
                               " is not Hermitian positive semidefinite");
    }
    sum += e * e;
    branches_.push_back({l, std::move(e), EffectKind::measurement_branch});
  }
  if (check_completeness) {
    const double dev = max_abs(sum - identity(dim_));
    if (!(dev <= kEffectCompletenessTolerance)) {
      throw InvalidFamilyError("measurement family violates sum E^2 = 1 (deviation " +
                               std::to_string(dev) + ")");
    }
  }
}

MeasurementFamily MeasurementFamily::from_branches(std::vector<Matrix> branches) {
  return MeasurementFamily(std::move(branches), true);
}

MeasurementFamily MeasurementFamily::unchecked(std::vector<Matrix> branches) {
  return MeasurementFamily(std::move(branches), false);
}

const Matrix& MeasurementFamily::branch(std::size_t l) const {
  if (l >= branches_.size()) throw UnknownLabelError("measurement outcome " + std::to_string(l));
  return branches_[l].matrix;
}

KrausChannel::KrausChannel(std::vector<EffectOperator> branches) : branches_(std::move(branches)) {
  if (branches_.empty()) throw InvalidFamilyError("Kraus channel has no branches");
  const auto dim = branches_.front().matrix.rows();
  Matrix sum = Matrix::Zero(dim, dim);
  for (const auto& k : branches_) {
    require_square(k.matrix, "Kraus branch");
    if (k.matrix.rows() != dim) throw DimensionError("Kraus branches have mismatched dimensions");
    sum += k.matrix.adjoint() * k.matrix;
  }
  const double dev = max_abs(sum - Matrix::Identity(dim, dim));
  if (!(dev <= kEffectCompletenessTolerance)) {
    throw InvalidFamilyError("Kraus branches are not trace preserving (deviation " +
                             std::to_string(dev) + ")");
  }
}

MeasurementFamily strength_family(std::size_t n, const Matrix& basis, double theta) {
  if (!(theta >= 0.0 && theta <= 1.0)) {
    throw RangeError("measurement strength theta must lie in [0, 1], got " + std::to_string(theta));
  }
  if (n < 1) throw RangeError("measurement family needs n >= 1");
  require_square(basis, "measurement basis");
  if (static_cast<std::size_t>(basis.rows()) != n) {
    throw DimensionError("measurement basis must be " + std::to_string(n) + "x" + std::to_string(n));
  }
  if (!is_unitary(basis, Tolerance(kBranchTolerance))) {
    throw NotUnitaryError("measurement basis columns are not orthonormal");
  }
  const double floor = (1.0 - theta) / static_cast<double>(n);
  std::vector<Matrix> branches;
  branches.reserve(n);
  for (Eigen::Index l = 0; l < static_cast<Eigen::Index>(n); ++l) {
    const Vector b = basis.col(l);
    const Matrix element = floor * identity(n) + theta * (b * b.adjoint());
    branches.push_back(hermitian_sqrt(element));
  }
  return MeasurementFamily::from_branches(std::move(branches));
}

MeasurementFamily strength_family(std::size_t n, double theta) {
  return strength_family(n, identity(n), theta);
}

EffectOperator unitary_effect(const Matrix& u) {
  require_square(u, "unitary effect");
  if (!is_unitary(u, Tolerance(kBranchTolerance))) throw NotUnitaryError("effect is not unitary");
  return {std::nullopt, u, EffectKind::unitary};
}

std::vector<EffectOperator> kraus_mixture(const std::vector<Matrix>& branches) {
  std::vector<EffectOperator> effects;
  effects.reserve(branches.size());
  for (std::size_t k = 0; k < branches.size(); ++k) {
    effects.push_back({k, branches[k], EffectKind::generic});
  }
  // Validation lives in the channel constructor.
  return KrausChannel(std::move(effects)).branches();
}

FamilyReport validate_family(const MeasurementFamily& family, Tolerance tol) {
  FamilyReport report;
  const std::size_t n = family.dim();
  Matrix sum = Matrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  bool branches_ok = true;
  for (const auto& branch : family.branches()) {
    const PredicateReport pred = check_predicates(branch.matrix, tol);
    report.hermitian_deviation.push_back(pred.hermitian_deviation);
    report.min_eigenvalue.push_back(pred.min_eigenvalue);
    branches_ok = branches_ok && pred.is_hermitian && pred.is_psd;
    sum += branch.matrix * branch.matrix;
  }
  report.completeness_deviation = max_abs(sum - identity(n));
  report.passed = branches_ok && report.completeness_deviation <= kEffectCompletenessTolerance;
  return report;
}

std::vector<Matrix> branch_operators(const ChannelEffect& effect, std::size_t n) {
  struct Visitor {
    std::size_t n;
    std::vector<Matrix> operator()(std::monostate) const { return {identity(n)}; }
    std::vector<Matrix> operator()(const EffectOperator& e) const { return {e.matrix}; }
    std::vector<Matrix> operator()(const MeasurementFamily& f) const {
      std::vector<Matrix> out;
      for (const auto& b : f.branches()) out.push_back(b.matrix);
      return out;
    }
    std::vector<Matrix> operator()(const KrausChannel& k) const {
      std::vector<Matrix> out;
      for (const auto& b : k.branches()) out.push_back(b.matrix);
      return out;
    }
  };
  std::vector<Matrix> ops = std::visit(Visitor{n}, effect);
  for (const auto& op : ops) {
    if (static_cast<std::size_t>(op.rows()) != n || static_cast<std::size_t>(op.cols()) != n) {
      throw DimensionError("channel effect does not act on dimension " + std::to_string(n));
    }
  }
  return ops;
}

bool is_branching(const ChannelEffect& effect) {
  return std::holds_alternative<MeasurementFamily>(effect) ||
         std::holds_alternative<KrausChannel>(effect);
}

}  // namespace qtele
