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

#include "qtele/eavesdrop_analysis.hpp"

#include <cmath>
#include <string>

namespace qtele {
namespace {

constexpr double kProjectorTolerance = 1e-9;

Matrix p_operator(const EavesdropConfig& cfg, std::size_t l, std::size_t m) {
  return eavesdrop_operator(cfg.family, cfg.bell, cfg.u0, l, m);
}

double probability_of(const Matrix& p, const Vector& psi) { return (p * psi).squaredNorm(); }

}  // namespace

void EavesdropConfig::validate() const {
  const std::size_t n = bell.dim();
  if (family.dim() != n) throw DimensionError("measurement family dimension does not match n");
  if (input.dim() != n) throw DimensionError("input state dimension does not match n");
  require_square(u0, "resource unitary u0");
  if (static_cast<std::size_t>(u0.rows()) != n) throw DimensionError("u0 does not match n");
}

ScenarioConfig EavesdropConfig::scenario() const {
  return ScenarioConfig{dim(), u0, bell, input, family, {}, true, true};
}

Matrix mirrored_branch(const MeasurementFamily& family, const Matrix& u0, std::size_t l) {
  return transpose_in_basis(u0.adjoint() * family.branch(l) * u0);
}

Matrix eavesdrop_operator(const MeasurementFamily& family, const BellFamily& bell,
                          const Matrix& u0, std::size_t l, std::size_t m) {
  if (family.dim() != bell.dim()) throw DimensionError("family and Bell dimensions differ");
  const BellOutcome& outcome = bell.at(m);
  const double scale = std::sqrt(outcome.chi) / static_cast<double>(bell.dim());
  return scale * outcome.unitary * mirrored_branch(family, u0, l) * outcome.unitary.adjoint();
}

double joint_probability(const EavesdropConfig& cfg, std::size_t l, std::size_t m) {
  cfg.validate();
  return probability_of(p_operator(cfg, l, m), cfg.input.amplitudes());
}

PureState conditional_output(const EavesdropConfig& cfg, std::size_t l, std::size_t m) {
  cfg.validate();
  const Vector out = p_operator(cfg, l, m) * cfg.input.amplitudes();
  const double p = out.squaredNorm();
  if (!(p > kNullBranchProbability)) {
    throw NullBranchError("outcome (l=" + std::to_string(l) + ", m=" + std::to_string(m) +
                          ") has zero probability");
  }
  return PureState(out / std::sqrt(p));
}

double conditional_fidelity(const EavesdropConfig& cfg, std::size_t l, std::size_t m) {
  cfg.validate();
  const Vector& psi = cfg.input.amplitudes();
  const Matrix p_op = p_operator(cfg, l, m);
  const double p = probability_of(p_op, psi);
  if (!(p > kNullBranchProbability)) {
    throw NullBranchError("outcome (l=" + std::to_string(l) + ", m=" + std::to_string(m) +
                          ") has zero probability");
  }
  return std::norm(psi.dot(p_op * psi)) / p;
}

double total_fidelity(const EavesdropConfig& cfg) {
  cfg.validate();
  const Vector& psi = cfg.input.amplitudes();
  double total = 0.0;
  for (std::size_t l = 0; l < cfg.family.size(); ++l) {
    for (std::size_t m = 0; m < cfg.bell.size(); ++m) {
      total += std::norm(psi.dot(p_operator(cfg, l, m) * psi));
    }
  }
  return total;
}

std::vector<double> joint_distribution(const EavesdropConfig& cfg) {
  cfg.validate();
  std::vector<double> table;
  table.reserve(cfg.family.size() * cfg.bell.size());
  for (std::size_t l = 0; l < cfg.family.size(); ++l) {
    for (std::size_t m = 0; m < cfg.bell.size(); ++m) {
      table.push_back(probability_of(p_operator(cfg, l, m), cfg.input.amplitudes()));
    }
  }
  return table;
}

std::vector<double> marginal_l(const EavesdropConfig& cfg) {
  const std::vector<double> table = joint_distribution(cfg);
  std::vector<double> out(cfg.family.size(), 0.0);
  for (std::size_t i = 0; i < table.size(); ++i) out[i / cfg.bell.size()] += table[i];
  return out;
}

std::vector<double> marginal_m(const EavesdropConfig& cfg) {
  const std::vector<double> table = joint_distribution(cfg);
  std::vector<double> out(cfg.bell.size(), 0.0);
  for (std::size_t i = 0; i < table.size(); ++i) out[i % cfg.bell.size()] += table[i];
  return out;
}

std::vector<double> predicted_marginal_l(const MeasurementFamily& family) {
  std::vector<double> out;
  for (const auto& branch : family.branches()) {
    out.push_back((branch.matrix * branch.matrix).trace().real() /
                  static_cast<double>(family.dim()));
  }
  return out;
}

std::vector<double> predicted_marginal_m(const BellFamily& bell) {
  std::vector<double> out;
  const double n2 = static_cast<double>(bell.dim() * bell.dim());
  for (const auto& outcome : bell.outcomes()) out.push_back(outcome.chi / n2);
  return out;
}

SequentialDecompositionReport sequential_decomposition_check(const EavesdropConfig& cfg) {
  cfg.validate();
  const std::size_t n = cfg.dim();
  const Matrix mixed = identity(n) / static_cast<double>(n);
  const Vector& psi = cfg.input.amplitudes();

  Matrix full = Matrix::Zero(mixed.rows(), mixed.cols());
  for (std::size_t l = 0; l < cfg.family.size(); ++l) {
    for (std::size_t m = 0; m < cfg.bell.size(); ++m) {
      const Vector v = cfg.bell.at(m).unitary.adjoint() * (p_operator(cfg, l, m) * psi);
      full += v * v.adjoint();
    }
  }
  Matrix regrouped = Matrix::Zero(mixed.rows(), mixed.cols());
  for (std::size_t l = 0; l < cfg.family.size(); ++l) {
    const Matrix e_b = mirrored_branch(cfg.family, cfg.u0, l);
    regrouped += e_b * mixed * e_b;
  }
  return {max_abs(full - mixed), max_abs(regrouped - mixed)};
}

ProjectiveCaseReport projective_case_analysis(const EavesdropConfig& cfg) {
  cfg.validate();
  const std::size_t n = cfg.dim();
  ProjectiveCaseReport report;
  report.observable_b = Matrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t l = 0; l < cfg.family.size(); ++l) {
    const Matrix& e = cfg.family.branch(l);
    const double idem = max_abs(e * e - e);
    const double rank = std::abs(e.trace() - Complex(1.0));
    if (idem > kProjectorTolerance || rank > kProjectorTolerance) {
      throw InvalidFamilyError("branch " + std::to_string(l) + " is not a rank-1 projector");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> eig(mirrored_branch(cfg.family, cfg.u0, l));
    const Vector phi = eig.eigenvectors().col(eig.eigenvalues().size() - 1);
    report.eigenstates.push_back(PureState::normalize(phi));
    report.observable_b += static_cast<double>(l) * (phi * phi.adjoint());
  }

  const double n2 = static_cast<double>(n * n);
  const Vector& psi = cfg.input.amplitudes();
  for (const PureState& phi : report.eigenstates) {
    std::vector<double> row;
    for (const BellOutcome& outcome : cfg.bell.outcomes()) {
      row.push_back(outcome.chi / n2 *
                    std::norm(phi.amplitudes().dot(outcome.unitary.adjoint() * psi)));
    }
    report.probability.push_back(std::move(row));
  }
  for (const BellOutcome& outcome : cfg.bell.outcomes()) {
    report.measured_observable.push_back(outcome.unitary * report.observable_b *
                                         outcome.unitary.adjoint());
  }
  return report;
}

double total_variation(const std::vector<double>& p, const std::vector<double>& q) {
  if (p.size() != q.size()) throw DimensionError("distributions have different supports");
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) sum += std::abs(p[i] - q[i]);
  return 0.5 * sum;
}

Eigen::MatrixXd distinguishability(const EavesdropConfig& cfg,
                                   const std::vector<PureState>& inputs) {
  if (inputs.size() < 2) throw RangeError("distinguishability needs at least two inputs");
  std::vector<std::vector<double>> tables;
  for (const PureState& input : inputs) {
    EavesdropConfig each{cfg.u0, cfg.bell, cfg.family, input};
    tables.push_back(joint_distribution(each));
  }
  const auto k = static_cast<Eigen::Index>(inputs.size());
  Eigen::MatrixXd dist = Eigen::MatrixXd::Zero(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = i + 1; j < k; ++j) {
      dist(i, j) = dist(j, i) = total_variation(tables[static_cast<std::size_t>(i)],
                                                tables[static_cast<std::size_t>(j)]);
    }
  }
  return dist;
}

EavesdropReport analyze(const EavesdropConfig& cfg, Tolerance hermitian_tol) {
  cfg.validate();
  const Vector& psi = cfg.input.amplitudes();
  EavesdropReport report;
  report.p_l.assign(cfg.family.size(), 0.0);
  report.p_m.assign(cfg.bell.size(), 0.0);
  for (std::size_t l = 0; l < cfg.family.size(); ++l) {
    for (std::size_t m = 0; m < cfg.bell.size(); ++m) {
      EavesdropEntry entry;
      entry.l = l;
      entry.m = m;
      entry.op = p_operator(cfg, l, m);
      entry.probability = probability_of(entry.op, psi);
      const Complex overlap = psi.dot(entry.op * psi);
      if (entry.probability > kNullBranchProbability) {
        entry.conditional_fidelity = std::norm(overlap) / entry.probability;
      }
      const double herm = max_abs(entry.op - entry.op.adjoint());
      entry.self_adjoint = herm <= hermitian_tol.epsilon();
      report.max_self_adjoint_deviation = std::max(report.max_self_adjoint_deviation, herm);
      report.p_l[l] += entry.probability;
      report.p_m[m] += entry.probability;
      report.total_fidelity += std::norm(overlap);
      report.entries.push_back(std::move(entry));
    }
  }
  return report;
}

}  // namespace qtele
