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

#include "qtele/eavesdrop_analysis.hpp"
#include "qtele/random.hpp"
#include "qtele/verification.hpp"
#include "test_util.hpp"

namespace qtele {
namespace {

PureState plus_state(std::size_t n) { return PureState::normalize(Vector::Ones(static_cast<Eigen::Index>(n))); }

PureState minus_state() {
  Vector v(2);
  v << 1.0, -1.0;
  return PureState::normalize(v);
}

EavesdropConfig comp_basis(std::size_t n, double theta, const PureState& input) {
  return EavesdropConfig{identity(n), BellFamily::weyl(n), strength_family(n, theta), input};
}

// Oracle-side quantities, from the full-state records only.
std::vector<double> oracle_table(const EavesdropConfig& cfg) {
  std::vector<double> out;
  for (const auto& rec : run_oracle(cfg.scenario())) out.push_back(rec.probability);
  return out;
}

double oracle_total_fidelity(const EavesdropConfig& cfg) {
  double f = 0.0;
  for (const auto& rec : run_oracle(cfg.scenario())) {
    if (rec.output) f += rec.probability * rec.output->fidelity(cfg.input);
  }
  return f;
}

double oracle_tv(const EavesdropConfig& cfg, const PureState& a, const PureState& b) {
  EavesdropConfig ca = cfg, cb = cfg;
  ca.input = a;
  cb.input = b;
  const auto pa = oracle_table(ca);
  const auto pb = oracle_table(cb);
  double s = 0.0;
  for (std::size_t i = 0; i < pa.size(); ++i) s += std::abs(pa[i] - pb[i]);
  return s / 2.0;
}

EavesdropConfig random_config(std::size_t n, Rng& rng) {
  return EavesdropConfig{random_unitary(n, rng), BellFamily::weyl(n),
                         random_measurement_family(n, n + 1, rng), random_state(n, rng)};
}

TEST(EavesdropOperator, NoMeasurementIsScaledIdentity) {
  for (std::size_t n : {2u, 3u, 4u}) {
    const MeasurementFamily fam = strength_family(n, 0.0);
    const BellFamily bell = BellFamily::weyl(n);
    const double scale = 1.0 / (static_cast<double>(n) * std::sqrt(static_cast<double>(n)));
    for (std::size_t l = 0; l < n; ++l) {
      for (std::size_t m = 0; m < bell.size(); ++m) {
        EXPECT_MATRIX_NEAR(eavesdrop_operator(fam, bell, identity(n), l, m), scale * identity(n), 1e-14);
      }
    }
  }
}

TEST(EavesdropOperator, ProjectiveQubit) {
  const MeasurementFamily fam = strength_family(2, 1.0);
  const BellFamily bell = BellFamily::weyl(2);
  for (std::size_t l = 0; l < 2; ++l) {
    for (std::size_t m = 0; m < 4; ++m) {
      const Matrix& u = bell.at(m).unitary;
      const Vector k = PureState::basis(2, l).amplitudes();
      const Matrix want = 0.5 * u * (k * k.adjoint()) * u.adjoint();
      EXPECT_MATRIX_NEAR(eavesdrop_operator(fam, bell, identity(2), l, m), want, 1e-12);
    }
  }
}

TEST(EavesdropOperator, SelfAdjointForRealDiagonalBranches) {
  for (std::size_t n : {2u, 3u, 4u}) {
    for (double theta : {0.0, 0.3, 1.0}) {
      const EavesdropReport rep = analyze(comp_basis(n, theta, PureState::basis(n, 0)));
      EXPECT_LE(rep.max_self_adjoint_deviation, 1e-9);
    }
  }
}

TEST(EavesdropOperator, SelfAdjointForComplexBranchesAndRandomResource) {
  // (u0^-1 E u0)^T is the conjugate of a Hermitian matrix, so this holds
  // beyond the real-diagonal case too.
  Rng rng(51);
  for (std::size_t n : {2u, 3u, 4u}) {
    for (int trial = 0; trial < 10; ++trial) {
      EXPECT_LE(analyze(random_config(n, rng)).max_self_adjoint_deviation, 1e-12);
    }
  }
}

TEST(EavesdropOperator, UnknownLabels) {
  const EavesdropConfig cfg = comp_basis(2, 0.5, PureState::basis(2, 0));
  EXPECT_THROW(eavesdrop_operator(cfg.family, cfg.bell, cfg.u0, 2, 0), UnknownLabelError);
  EXPECT_THROW(eavesdrop_operator(cfg.family, cfg.bell, cfg.u0, 0, 4), UnknownLabelError);
}

TEST(JointProbability, ProjectiveQubitOnZero) {
  const EavesdropConfig cfg = comp_basis(2, 1.0, PureState::basis(2, 0));
  EXPECT_NEAR(joint_probability(cfg, 0, 0), 0.25, 1e-15);
  EXPECT_NEAR(joint_probability(cfg, 1, 0), 0.0, 1e-15);
  const auto oracle = oracle_table(cfg);
  EXPECT_NEAR(oracle[0], 0.25, 1e-15);
  EXPECT_NEAR(oracle[4], 0.0, 1e-15);
}

TEST(JointProbability, NoMeasurementIsUniform) {
  const EavesdropConfig cfg = comp_basis(2, 0.0, plus_state(2));
  for (std::size_t l = 0; l < 2; ++l) {
    for (std::size_t m = 0; m < 4; ++m) EXPECT_NEAR(joint_probability(cfg, l, m), 0.125, 1e-15);
  }
  for (double p : oracle_table(cfg)) EXPECT_NEAR(p, 0.125, 1e-15);
}

TEST(JointProbability, MatchesOracleAndSumsToOne) {
  Rng rng(52);
  for (std::size_t n : {2u, 3u, 4u}) {
    for (int trial = 0; trial < 10; ++trial) {
      const EavesdropConfig cfg = random_config(n, rng);
      const auto table = joint_distribution(cfg);
      const auto oracle = oracle_table(cfg);
      ASSERT_EQ(table.size(), oracle.size());
      double sum = 0.0;
      for (std::size_t i = 0; i < table.size(); ++i) {
        EXPECT_NEAR(table[i], oracle[i], 1e-10);
        sum += table[i];
      }
      EXPECT_NEAR(sum, 1.0, 1e-10);
    }
  }
}

TEST(ConditionalOutput, NoMeasurementLeavesInput) {
  Rng rng(53);
  const PureState input = random_state(3, rng);
  const EavesdropConfig cfg = comp_basis(3, 0.0, input);
  for (std::size_t l = 0; l < 3; ++l) {
    for (std::size_t m = 0; m < 9; ++m) {
      EXPECT_NEAR(conditional_output(cfg, l, m).fidelity(input), 1.0, 1e-12);
    }
  }
}

TEST(ConditionalOutput, ProjectedEigenstate) {
  const EavesdropConfig cfg = comp_basis(2, 1.0, PureState::basis(2, 0));
  for (std::size_t m = 0; m < 4; ++m) {
    if (joint_probability(cfg, 0, m) < 1e-14) continue;
    EXPECT_NEAR(conditional_output(cfg, 0, m).fidelity(PureState::basis(2, 0)), 1.0, 1e-12);
  }
  EXPECT_THROW(conditional_output(cfg, 1, 0), NullBranchError);
}

TEST(ConditionalOutput, MatchesOracleOutputs) {
  Rng rng(54);
  for (std::size_t n : {2u, 3u}) {
    for (int trial = 0; trial < 10; ++trial) {
      const EavesdropConfig cfg = random_config(n, rng);
      for (const auto& rec : run_oracle(cfg.scenario())) {
        if (!rec.output) continue;
        const PureState out = conditional_output(cfg, *rec.l, rec.m);
        EXPECT_MATRIX_NEAR(out.amplitudes(), rec.output->amplitudes(), 1e-9);
      }
    }
  }
}

TEST(ConditionalFidelity, NoMeasurementIsPerfect) {
  const EavesdropConfig cfg = comp_basis(3, 0.0, plus_state(3));
  for (std::size_t m = 0; m < 9; ++m) EXPECT_NEAR(conditional_fidelity(cfg, 1, m), 1.0, 1e-12);
}

TEST(ConditionalFidelity, PlusUnderProjectiveEavesdropping) {
  const EavesdropConfig cfg = comp_basis(2, 1.0, plus_state(2));
  for (std::size_t l = 0; l < 2; ++l) {
    for (std::size_t m = 0; m < 4; ++m) EXPECT_NEAR(conditional_fidelity(cfg, l, m), 0.5, 1e-12);
  }
}

TEST(ConditionalFidelity, BoundedByOne) {
  Rng rng(55);
  for (int trial = 0; trial < 20; ++trial) {
    const EavesdropReport rep = analyze(random_config(3, rng));
    for (const auto& e : rep.entries) {
      if (!e.conditional_fidelity) continue;
      EXPECT_GE(*e.conditional_fidelity, 0.0);
      EXPECT_LE(*e.conditional_fidelity, 1.0 + 1e-10);
    }
  }
}

TEST(TotalFidelity, ClosedFormQubitValues) {
  EXPECT_NEAR(total_fidelity(comp_basis(2, 0.0, plus_state(2))), 1.0, 1e-12);
  EXPECT_NEAR(total_fidelity(comp_basis(2, 1.0, PureState::basis(2, 0))), 1.0, 1e-12);
  EXPECT_NEAR(total_fidelity(comp_basis(2, 1.0, plus_state(2))), 0.5, 1e-12);
}

TEST(TotalFidelity, StrengthCurveMatchesAnalyticAndOracle) {
  for (double theta : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    const EavesdropConfig cfg = comp_basis(2, theta, plus_state(2));
    const double analytic = 0.5 * (1.0 + std::sqrt(1.0 - theta * theta));
    EXPECT_NEAR(oracle_total_fidelity(cfg), analytic, 1e-9) << theta;
    EXPECT_NEAR(total_fidelity(cfg), analytic, 1e-9) << theta;
  }
}

TEST(TotalFidelity, NonIncreasingInStrength) {
  Rng rng(56);
  for (std::size_t n : {2u, 3u}) {
    const PureState input = n == 2 ? plus_state(2) : random_state(n, rng);
    double prev = 2.0;
    for (int i = 0; i <= 10; ++i) {
      const double f = total_fidelity(comp_basis(n, i / 10.0, input));
      EXPECT_LE(f, prev + 1e-12);
      prev = f;
    }
  }
}

TEST(TotalFidelity, EigenstatesAreUntouched) {
  for (std::size_t n : {2u, 3u}) {
    for (int i = 0; i <= 10; ++i) {
      EXPECT_NEAR(total_fidelity(comp_basis(n, i / 10.0, PureState::basis(n, n - 1))), 1.0, 1e-10);
    }
  }
}

TEST(MarginalL, ProjectiveAndHalfStrengthQubit) {
  for (double theta : {1.0, 0.5}) {
    for (const PureState& input : {PureState::basis(2, 0), plus_state(2)}) {
      const auto pl = marginal_l(comp_basis(2, theta, input));
      EXPECT_NEAR(pl[0], 0.5, 1e-12);
      EXPECT_NEAR(pl[1], 0.5, 1e-12);
    }
  }
}

TEST(MarginalL, InputIndependent) {
  Rng rng(57);
  for (std::size_t n : {2u, 3u, 4u}) {
    EavesdropConfig cfg = random_config(n, rng);
    const auto want = predicted_marginal_l(cfg.family);
    double spread = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
      cfg.input = random_state(n, rng);
      const auto pl = marginal_l(cfg);
      for (std::size_t l = 0; l < pl.size(); ++l) spread = std::max(spread, std::abs(pl[l] - want[l]));
    }
    EXPECT_LT(spread, 1e-10);
  }
}

TEST(MarginalM, UniformWeylStatistics) {
  Rng rng(58);
  for (std::size_t n : {2u, 3u}) {
    for (double theta : {0.0, 0.4, 1.0}) {
      for (int trial = 0; trial < 20; ++trial) {
        EavesdropConfig cfg = comp_basis(n, theta, random_state(n, rng));
        cfg.u0 = random_unitary(n, rng);
        for (double p : marginal_m(cfg)) EXPECT_NEAR(p, 1.0 / static_cast<double>(n * n), 1e-10);
      }
    }
  }
}

TEST(SequentialDecomposition, ReconstructsMixedState) {
  Rng rng(59);
  for (int i = 0; i <= 4; ++i) {
    EavesdropConfig cfg = comp_basis(2, i / 4.0, random_state(2, rng));
    cfg.u0 = random_unitary(2, rng);
    const auto rep = sequential_decomposition_check(cfg);
    EXPECT_LT(rep.full_deviation, 1e-9);
    EXPECT_LT(rep.regrouped_deviation, 1e-9);
  }
  EXPECT_LT(sequential_decomposition_check(comp_basis(3, 1.0, random_state(3, rng))).max_deviation(),
            1e-9);
  for (std::size_t n : {2u, 3u, 4u}) {
    EXPECT_LT(sequential_decomposition_check(random_config(n, rng)).max_deviation(), 1e-9);
  }
}

TEST(SequentialDecomposition, IncompleteFamilyIsFlagged) {
  const MeasurementFamily good = strength_family(2, 0.5);
  EavesdropConfig cfg = comp_basis(2, 0.5, plus_state(2));
  cfg.family = MeasurementFamily::unchecked({good.branch(0)});
  const auto rep = sequential_decomposition_check(cfg);
  EXPECT_GT(rep.full_deviation, 0.1);
  EXPECT_GT(rep.regrouped_deviation, 0.1);
}

TEST(ProjectiveCase, TableMatchesJointProbability) {
  const EavesdropConfig cfg = comp_basis(2, 1.0, PureState::basis(2, 0));
  const ProjectiveCaseReport rep = projective_case_analysis(cfg);
  for (std::size_t l = 0; l < 2; ++l) {
    for (std::size_t m = 0; m < 4; ++m) {
      EXPECT_NEAR(rep.probability[l][m], joint_probability(cfg, l, m), 1e-14);
    }
  }
}

TEST(ProjectiveCase, RandomResourceAndBasis) {
  Rng rng(60);
  for (std::size_t n : {2u, 3u, 4u}) {
    const EavesdropConfig cfg{random_unitary(n, rng), BellFamily::weyl(n),
                              strength_family(n, random_unitary(n, rng), 1.0), random_state(n, rng)};
    const ProjectiveCaseReport rep = projective_case_analysis(cfg);
    const auto pl = marginal_l(cfg);
    for (std::size_t l = 0; l < n; ++l) {
      double row = 0.0;
      for (std::size_t m = 0; m < n * n; ++m) {
        EXPECT_NEAR(rep.probability[l][m], joint_probability(cfg, l, m), 1e-12);
        row += rep.probability[l][m];
      }
      EXPECT_NEAR(row, pl[l], 1e-12);
    }
  }
}

TEST(ProjectiveCase, ObservableForIdentityOutcome) {
  const ProjectiveCaseReport rep = projective_case_analysis(comp_basis(3, 1.0, plus_state(3)));
  EXPECT_MATRIX_NEAR(rep.measured_observable[0], rep.observable_b, 1e-12);
  Matrix want = Matrix::Zero(3, 3);
  want.diagonal() << 0.0, 1.0, 2.0;
  EXPECT_MATRIX_NEAR(rep.observable_b, want, 1e-12);
}

TEST(ProjectiveCase, RejectsWeakMeasurement) {
  EXPECT_THROW(projective_case_analysis(comp_basis(2, 0.5, plus_state(2))), InvalidFamilyError);
}

TEST(Distinguishability, NoMeasurementLeaksNothing) {
  const EavesdropConfig cfg = comp_basis(2, 0.0, plus_state(2));
  const Eigen::MatrixXd d = distinguishability(cfg, {PureState::basis(2, 0), PureState::basis(2, 1), plus_state(2)});
  EXPECT_LT(d.cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Distinguishability, ProjectiveQubitComputationalPair) {
  // The two p(l, m) tables have disjoint supports; the oracle agrees.
  const EavesdropConfig cfg = comp_basis(2, 1.0, plus_state(2));
  const PureState zero = PureState::basis(2, 0), one = PureState::basis(2, 1);
  const Eigen::MatrixXd d = distinguishability(cfg, {zero, one});
  EXPECT_NEAR(oracle_tv(cfg, zero, one), 1.0, 1e-12);
  EXPECT_NEAR(d(0, 1), 1.0, 1e-12);
  EXPECT_EQ(d(0, 1), d(1, 0));
}

TEST(Distinguishability, ConjugateBasisIsInvisible) {
  const EavesdropConfig cfg = comp_basis(2, 1.0, plus_state(2));
  EXPECT_NEAR(distinguishability(cfg, {plus_state(2), minus_state()})(0, 1), 0.0, 1e-12);
  EXPECT_NEAR(oracle_tv(cfg, plus_state(2), minus_state()), 0.0, 1e-12);
}

TEST(Distinguishability, TradeoffAlongStrength) {
  double prev_d = -1.0, prev_f = 2.0;
  for (int i = 0; i <= 10; ++i) {
    const double theta = i / 10.0;
    const EavesdropConfig cfg = comp_basis(2, theta, plus_state(2));
    const double d = distinguishability(cfg, {PureState::basis(2, 0), PureState::basis(2, 1)})(0, 1);
    const double f = total_fidelity(cfg);
    EXPECT_GE(d, prev_d - 1e-12);
    EXPECT_LE(f, prev_f + 1e-12);
    EXPECT_NEAR(d, theta, 1e-12);
    prev_d = d;
    prev_f = f;
  }
}

TEST(Distinguishability, NeedsTwoInputs) {
  EXPECT_THROW(distinguishability(comp_basis(2, 1.0, plus_state(2)), {plus_state(2)}), RangeError);
}

TEST(Analyze, ReportIsConsistent) {
  Rng rng(61);
  const EavesdropConfig cfg = random_config(3, rng);
  const EavesdropReport rep = analyze(cfg);
  ASSERT_EQ(rep.entries.size(), cfg.family.size() * 9);
  double sum = 0.0;
  for (double p : rep.p_l) sum += p;
  EXPECT_NEAR(sum, 1.0, 1e-10);
  EXPECT_NEAR(rep.total_fidelity, total_fidelity(cfg), 1e-14);
  for (std::size_t m = 0; m < 9; ++m) EXPECT_NEAR(rep.p_m[m], 1.0 / 9.0, 1e-10);
}

}  // namespace
}  // namespace qtele
