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

#include "qtele/teleport_engine.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace qtele {
namespace {

constexpr double kConfigTolerance = 1e-10;

Eigen::Index as_index(std::size_t n) { return static_cast<Eigen::Index>(n); }

std::optional<std::size_t> selector(bool branching, std::size_t k) {
  return branching ? std::optional<std::size_t>(k) : std::nullopt;
}

std::size_t resolve_branch(const std::vector<Matrix>& ops, bool branching,
                           std::optional<std::size_t> sel, const char* side) {
  if (!sel) {
    if (branching) {
      throw UnknownLabelError(std::string("a branch selector is required for the effect on ") + side);
    }
    return 0;
  }
  if (*sel >= ops.size()) {
    throw UnknownLabelError(std::string("branch ") + std::to_string(*sel) + " of the effect on " +
                            side);
  }
  return *sel;
}

TeleportRecord make_record(std::size_t m, std::optional<std::size_t> l,
                           std::optional<std::size_t> branch, Vector raw) {
  TeleportRecord rec;
  rec.m = m;
  rec.l = l;
  rec.branch = branch;
  rec.probability = raw.squaredNorm();
  if (rec.probability > kNullBranchProbability) {
    rec.output = PureState::normalize(raw);
  }
  rec.raw_output = std::move(raw);
  return rec;
}

}  // namespace

ScenarioConfig ScenarioConfig::ideal(const PureState& input) {
  const std::size_t n = input.dim();
  return ScenarioConfig{n, identity(n), BellFamily::weyl(n), input, {}, {}, true, true};
}

void ScenarioConfig::validate() const {
  if (n < 2) throw RangeError("scenario needs n >= 2");
  require_square(u0, "resource unitary u0");
  if (static_cast<std::size_t>(u0.rows()) != n) throw DimensionError("u0 does not match n");
  if (!is_unitary(u0, Tolerance(kConfigTolerance))) throw NotUnitaryError("u0 is not unitary");
  if (bell.dim() != n) throw DimensionError("Bell family dimension does not match n");
  if (input.dim() != n) throw DimensionError("input state dimension does not match n");
  branch_operators(effect_r, n);
  branch_operators(effect_b, n);
}

std::vector<TeleportRecord> run_oracle(const ScenarioConfig& cfg, EffectOrder order) {
  cfg.validate();
  const std::size_t n = cfg.n;
  const Eigen::Index dim = as_index(n);
  const Matrix id = identity(n);
  const std::vector<Matrix> ops_r = branch_operators(cfg.effect_r, n);
  const std::vector<Matrix> ops_b = branch_operators(cfg.effect_b, n);
  const bool branching_r = is_branching(cfg.effect_r);
  const bool branching_b = is_branching(cfg.effect_b);

  const EntangledResource resource = make_entangled_resource(n, cfg.u0);
  std::vector<Vector> bell_states;
  bell_states.reserve(cfg.bell.size());
  for (std::size_t m = 0; m < cfg.bell.size(); ++m) {
    bell_states.push_back(bell_outcome_state(cfg.bell, m, cfg.u0));
  }

  std::vector<TeleportRecord> records;
  records.reserve(ops_r.size() * ops_b.size() * cfg.bell.size());
  for (std::size_t l = 0; l < ops_r.size(); ++l) {
    // Results for this l, indexed [branch][m], emitted in (m, branch) order.
    std::vector<std::vector<Vector>> raw(ops_b.size());
    for (std::size_t k = 0; k < ops_b.size(); ++k) {
      const Matrix on_r = tensor_product(ops_r[l], id);
      const Matrix on_b = tensor_product(id, ops_b[k]);
      const Vector shared = order == EffectOrder::reference_first
                                ? Vector(on_b * (on_r * resource.state.amplitudes()))
                                : Vector(on_r * (on_b * resource.state.amplitudes()));
      const Vector full = tensor_product(cfg.input.amplitudes(), shared);
      // full[ar * N + b] viewed as an N x N^2 matrix indexed (b, ar).
      const Eigen::Map<const Matrix> by_b(full.data(), dim, dim * dim);
      for (std::size_t m = 0; m < cfg.bell.size(); ++m) {
        Vector out = by_b * bell_states[m].conjugate();
        if (cfg.apply_correction) out = cfg.bell.at(m).unitary * out;
        raw[k].push_back(std::move(out));
      }
    }
    for (std::size_t m = 0; m < cfg.bell.size(); ++m) {
      for (std::size_t k = 0; k < ops_b.size(); ++k) {
        records.push_back(make_record(m, selector(branching_r, l), selector(branching_b, k),
                                      std::move(raw[k][m])));
      }
    }
  }
  return records;
}

namespace {

Matrix transfer_from_ops(const ScenarioConfig& cfg, std::size_t m, const Matrix& e_r,
                         const Matrix& f_b) {
  const BellOutcome& outcome = cfg.bell.at(m);
  const Matrix e_b = transpose_in_basis(cfg.u0.adjoint() * e_r * cfg.u0);
  const double scale = std::sqrt(outcome.chi) / static_cast<double>(cfg.n);
  return scale * outcome.unitary * f_b * e_b * outcome.unitary.adjoint();
}

}  // namespace

Matrix transfer_operator(const ScenarioConfig& cfg, std::size_t m, std::optional<std::size_t> l,
                         std::optional<std::size_t> branch) {
  cfg.validate();
  const std::vector<Matrix> ops_r = branch_operators(cfg.effect_r, cfg.n);
  const std::vector<Matrix> ops_b = branch_operators(cfg.effect_b, cfg.n);
  const std::size_t lr = resolve_branch(ops_r, is_branching(cfg.effect_r), l, "R");
  const std::size_t kb = resolve_branch(ops_b, is_branching(cfg.effect_b), branch, "B");
  return transfer_from_ops(cfg, m, ops_r[lr], ops_b[kb]);
}

std::vector<TeleportRecord> fast_run(const ScenarioConfig& cfg) {
  cfg.validate();
  const std::vector<Matrix> ops_r = branch_operators(cfg.effect_r, cfg.n);
  const std::vector<Matrix> ops_b = branch_operators(cfg.effect_b, cfg.n);
  const bool branching_r = is_branching(cfg.effect_r);
  const bool branching_b = is_branching(cfg.effect_b);
  const Vector& psi = cfg.input.amplitudes();

  std::vector<TeleportRecord> records;
  records.reserve(ops_r.size() * ops_b.size() * cfg.bell.size());
  for (std::size_t l = 0; l < ops_r.size(); ++l) {
    for (std::size_t m = 0; m < cfg.bell.size(); ++m) {
      for (std::size_t k = 0; k < ops_b.size(); ++k) {
        Vector out = transfer_from_ops(cfg, m, ops_r[l], ops_b[k]) * psi;
        if (!cfg.apply_correction) out = cfg.bell.at(m).unitary.adjoint() * out;
        records.push_back(
            make_record(m, selector(branching_r, l), selector(branching_b, k), std::move(out)));
      }
    }
  }
  return records;
}

RecordComparison compare_records(const std::vector<TeleportRecord>& a,
                                 const std::vector<TeleportRecord>& b) {
  RecordComparison cmp;
  cmp.same_labels = a.size() == b.size();
  if (!cmp.same_labels) return cmp;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const TeleportRecord& x = a[i];
    const TeleportRecord& y = b[i];
    if (x.m != y.m || x.l != y.l || x.branch != y.branch ||
        x.raw_output.size() != y.raw_output.size() || x.output.has_value() != y.output.has_value()) {
      cmp.same_labels = false;
      return cmp;
    }
    cmp.max_probability_deviation =
        std::max(cmp.max_probability_deviation, std::abs(x.probability - y.probability));
    cmp.max_raw_deviation = std::max(cmp.max_raw_deviation, max_abs(x.raw_output - y.raw_output));
    if (x.output && y.output) {
      cmp.max_output_deviation = std::max(
          cmp.max_output_deviation, max_abs(x.output->amplitudes() - y.output->amplitudes()));
    }
  }
  return cmp;
}

DeviationReport ideal_decomposition_check(const ScenarioConfig& cfg) {
  cfg.validate();
  const std::size_t n = cfg.n;
  const Vector& psi = cfg.input.amplitudes();
  DeviationReport report;
  report.reconstructed = Matrix::Zero(as_index(n), as_index(n));
  const double n2 = static_cast<double>(n * n);
  for (const BellOutcome& outcome : cfg.bell.outcomes()) {
    const Vector v = outcome.unitary.adjoint() * psi;
    report.reconstructed += (outcome.chi / n2) * (v * v.adjoint());
  }
  report.max_deviation =
      max_abs(report.reconstructed - identity(n) / static_cast<double>(n));
  return report;
}

std::vector<MixedRecord> group_unrecorded(const std::vector<TeleportRecord>& records,
                                          const PureState& input) {
  std::vector<MixedRecord> grouped;
  const Vector& psi = input.amplitudes();
  for (const TeleportRecord& rec : records) {
    if (grouped.empty() || grouped.back().m != rec.m || grouped.back().l != rec.l) {
      MixedRecord mixed;
      mixed.m = rec.m;
      mixed.l = rec.l;
      mixed.density = Matrix::Zero(rec.raw_output.size(), rec.raw_output.size());
      grouped.push_back(std::move(mixed));
    }
    MixedRecord& cur = grouped.back();
    cur.density += rec.raw_output * rec.raw_output.adjoint();
    cur.probability += rec.probability;
  }
  for (MixedRecord& mixed : grouped) {
    if (mixed.probability > kNullBranchProbability) {
      const Complex overlap = psi.dot(mixed.density * psi);
      mixed.fidelity = overlap.real() / mixed.probability;
    }
  }
  return grouped;
}

}  // namespace qtele
