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

#include "qtele/verification.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include "qtele/bell_structures.hpp"
#include "qtele/eavesdrop_analysis.hpp"
#include "qtele/parallel.hpp"
#include "qtele/runner.hpp"

namespace qtele {

MeasurementFamily random_measurement_family(std::size_t n, std::size_t outcomes, Rng& rng) {
  std::vector<Matrix> elements;
  Matrix total = Matrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t l = 0; l < outcomes; ++l) {
    const Matrix a = random_gaussian_matrix(n, n, rng);
    elements.push_back(a.adjoint() * a);
    total += elements.back();
  }
  const Matrix inv_root = hermitian_sqrt(total).inverse();
  std::vector<Matrix> branches;
  for (const Matrix& g : elements) {
    Matrix povm = inv_root * g * inv_root;
    povm = 0.5 * (povm + povm.adjoint());
    branches.push_back(hermitian_sqrt(povm));
  }
  return MeasurementFamily::from_branches(std::move(branches));
}

KrausChannel random_kraus_channel(std::size_t n, std::size_t branches, Rng& rng) {
  std::vector<Matrix> raw;
  Matrix total = Matrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t k = 0; k < branches; ++k) {
    raw.push_back(random_gaussian_matrix(n, n, rng));
    total += raw.back().adjoint() * raw.back();
  }
  const Matrix inv_root = hermitian_sqrt(total).inverse();
  std::vector<EffectOperator> ops;
  for (std::size_t k = 0; k < branches; ++k) {
    ops.push_back({k, raw[k] * inv_root, EffectKind::generic});
  }
  return KrausChannel(std::move(ops));
}

ChannelEffect random_effect(std::size_t n, Rng& rng) {
  std::uniform_int_distribution<int> pick(0, 4);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> count(2, n + 1);
  switch (pick(rng)) {
    case 0:
      return std::monostate{};
    case 1:
      return unitary_effect(random_unitary(n, rng));
    case 2: {
      const Matrix basis = random_unitary(n, rng);
      return strength_family(n, basis, unit(rng));
    }
    case 3:
      return random_measurement_family(n, count(rng), rng);
    default:
      return random_kraus_channel(n, count(rng), rng);
  }
}

ScenarioConfig random_scenario(std::size_t n, Rng& rng) {
  PureState input = random_state(n, rng);
  Matrix u0 = random_unitary(n, rng);
  ChannelEffect effect_r = random_effect(n, rng);
  ChannelEffect effect_b = random_effect(n, rng);
  return ScenarioConfig{n,        std::move(u0),       BellFamily::weyl(n), std::move(input),
                        std::move(effect_r), std::move(effect_b), true, true};
}

bool VerifyReport::passed() const {
  for (const CheckResult& c : checks) {
    if (!c.passed) return false;
  }
  return !checks.empty();
}

namespace {

constexpr double kStrengthGrid[] = {0.0, 0.25, 0.5, 0.75, 1.0};

/// Shared knobs for the suites; routes the corruption hook into every family.
struct Context {
  std::vector<std::size_t> dims;
  std::size_t scenarios = 0;
  std::uint64_t seed = 0;
  Corruption corrupt = Corruption::none;

  BellFamily bell(std::size_t n) const {
    if (corrupt != Corruption::bell) return BellFamily::weyl(n);
    std::vector<BellOutcome> outcomes = BellFamily::weyl(n).outcomes();
    outcomes.pop_back();
    return BellFamily::unchecked(n, std::move(outcomes));
  }

  MeasurementFamily strength(std::size_t n, const Matrix& basis, double theta) const {
    MeasurementFamily fam = strength_family(n, basis, theta);
    if (corrupt != Corruption::measurement) return fam;
    std::vector<Matrix> branches;
    for (const auto& b : fam.branches()) branches.push_back(b.matrix);
    branches.front() *= 1.01;
    return MeasurementFamily::unchecked(std::move(branches));
  }

  /// Random eavesdropping scenario with a strength family in a random basis.
  EavesdropConfig eavesdrop(std::size_t n, Rng& rng) const {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    Matrix u0 = random_unitary(n, rng);
    const Matrix basis = random_unitary(n, rng);
    MeasurementFamily fam = strength(n, basis, unit(rng));
    return EavesdropConfig{std::move(u0), bell(n), std::move(fam), random_state(n, rng)};
  }

  ScenarioConfig scenario(std::size_t n, Rng& rng) const {
    ScenarioConfig cfg = random_scenario(n, rng);
    cfg.bell = bell(n);
    if (corrupt == Corruption::measurement) {
      std::uniform_real_distribution<double> unit(0.0, 1.0);
      cfg.effect_r = strength(n, random_unitary(n, rng), unit(rng));
    }
    return cfg;
  }

  Rng rng(std::size_t salt) const { return Rng(seed * 1000003u + salt); }
};

struct Suite {
  const char* name;
  double threshold;
  std::function<double(const Context&, Rng&)> run;
};

double bell_completeness(const Context& ctx, Rng&) {
  double dev = 0.0;
  for (std::size_t n : ctx.dims) dev = std::max(dev, ctx.bell(n).completeness_deviation());
  return dev;
}

double measurement_completeness(const Context& ctx, Rng& rng) {
  double dev = 0.0;
  for (std::size_t n : ctx.dims) {
    for (double theta : kStrengthGrid) {
      dev = std::max(dev, validate_family(ctx.strength(n, identity(n), theta)).completeness_deviation);
      dev = std::max(dev, validate_family(ctx.strength(n, random_unitary(n, rng), theta))
                              .completeness_deviation);
    }
  }
  return dev;
}

double ideal_teleportation(const Context& ctx, Rng& rng) {
  double dev = 0.0;
  for (std::size_t n : ctx.dims) {
    const BellFamily bell = ctx.bell(n);
    const double n2 = static_cast<double>(n * n);
    for (std::size_t s = 0; s < ctx.scenarios; ++s) {
      const PureState input = random_state(n, rng);
      const ScenarioConfig cfg{n, random_unitary(n, rng), bell, input, {}, {}, true, true};
      for (const TeleportRecord& rec : run_oracle(cfg)) {
        const double fidelity = rec.output ? rec.output->fidelity(input) : 0.0;
        dev = std::max(dev, std::abs(1.0 - fidelity));
        dev = std::max(dev, std::abs(rec.probability - bell.at(rec.m).chi / n2));
      }
    }
  }
  return dev;
}

double oracle_equivalence(const Context& ctx, Rng& rng) {
  double dev = 0.0;
  for (std::size_t n : ctx.dims) {
    for (std::size_t s = 0; s < ctx.scenarios; ++s) {
      const ScenarioConfig cfg = ctx.scenario(n, rng);
      const RecordComparison cmp = compare_records(fast_run(cfg), run_oracle(cfg));
      if (!cmp.same_labels) return std::numeric_limits<double>::infinity();
      dev = std::max({dev, cmp.max_probability_deviation, cmp.max_raw_deviation,
                      cmp.max_output_deviation});
    }
  }
  return dev;
}

double probability_completeness(const Context& ctx, Rng& rng) {
  double dev = 0.0;
  for (std::size_t n : ctx.dims) {
    for (std::size_t s = 0; s < ctx.scenarios; ++s) {
      double sum = 0.0;
      for (const TeleportRecord& rec : run_oracle(ctx.scenario(n, rng))) sum += rec.probability;
      dev = std::max(dev, std::abs(sum - 1.0));
    }
  }
  return dev;
}

double marginal_laws(const Context& ctx, Rng& rng) {
  double dev = 0.0;
  for (std::size_t n : ctx.dims) {
    for (std::size_t s = 0; s < ctx.scenarios; ++s) {
      const EavesdropConfig cfg = ctx.eavesdrop(n, rng);
      const std::vector<double> pl = marginal_l(cfg);
      const std::vector<double> pm = marginal_m(cfg);
      const std::vector<double> want_l = predicted_marginal_l(cfg.family);
      const std::vector<double> want_m = predicted_marginal_m(cfg.bell);
      for (std::size_t l = 0; l < pl.size(); ++l) dev = std::max(dev, std::abs(pl[l] - want_l[l]));
      for (std::size_t m = 0; m < pm.size(); ++m) dev = std::max(dev, std::abs(pm[m] - want_m[m]));
      // A corrupted Bell family silently drops outcomes from both sides.
      double total = 0.0;
      for (double p : pm) total += p;
      dev = std::max(dev, std::abs(total - 1.0));
    }
  }
  return dev;
}

double ideal_decomposition(const Context& ctx, Rng& rng) {
  double dev = 0.0;
  for (std::size_t n : ctx.dims) {
    for (std::size_t s = 0; s < ctx.scenarios; ++s) {
      const ScenarioConfig cfg{n, identity(n), ctx.bell(n), random_state(n, rng), {}, {}, true, true};
      dev = std::max(dev, ideal_decomposition_check(cfg).max_deviation);
    }
  }
  return dev;
}

double sequential_decomposition(const Context& ctx, Rng& rng) {
  double dev = 0.0;
  for (std::size_t n : ctx.dims) {
    for (std::size_t s = 0; s < ctx.scenarios; ++s) {
      dev = std::max(dev, sequential_decomposition_check(ctx.eavesdrop(n, rng)).max_deviation());
    }
  }
  return dev;
}

double closed_form_vs_oracle(const Context& ctx, Rng& rng) {
  double dev = 0.0;
  for (std::size_t n : ctx.dims) {
    for (std::size_t s = 0; s < ctx.scenarios; ++s) {
      const EavesdropConfig cfg = ctx.eavesdrop(n, rng);
      const std::vector<double> table = joint_distribution(cfg);
      const std::vector<TeleportRecord> records = run_oracle(cfg.scenario());
      if (records.size() != table.size()) return std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < table.size(); ++i) {
        dev = std::max(dev, std::abs(table[i] - records[i].probability));
      }
    }
  }
  return dev;
}

double time_order(const Context& ctx, Rng& rng) {
  double dev = 0.0;
  for (std::size_t n : ctx.dims) {
    for (std::size_t s = 0; s < ctx.scenarios; ++s) {
      const ScenarioConfig cfg = ctx.scenario(n, rng);
      const RecordComparison cmp = compare_records(run_oracle(cfg, EffectOrder::reference_first),
                                                   run_oracle(cfg, EffectOrder::output_first));
      if (!cmp.same_labels) return std::numeric_limits<double>::infinity();
      dev = std::max({dev, cmp.max_probability_deviation, cmp.max_raw_deviation});
    }
  }
  return dev;
}

double mirror_correlation(const Context& ctx, Rng& rng) {
  double dev = 0.0;
  for (std::size_t n : ctx.dims) {
    for (std::size_t s = 0; s < ctx.scenarios; ++s) {
      const EntangledResource res = make_entangled_resource(n, random_unitary(n, rng));
      const Matrix o_b = random_hermitian(n, rng);
      const Matrix o_r = mirror_operator(o_b, res.u0);
      const Matrix diff = tensor_product(identity(n), o_b) - tensor_product(o_r, identity(n));
      dev = std::max(dev, (diff * res.state.amplitudes()).norm());
    }
  }
  return dev;
}

double closed_form_values(const Context& ctx, Rng&) {
  constexpr std::size_t n = 2;
  const PureState plus = PureState::normalize(Vector::Ones(2));
  double dev = 0.0;
  for (double theta : kStrengthGrid) {
    const MeasurementFamily fam = ctx.strength(n, identity(n), theta);
    const EavesdropConfig on_plus{identity(n), ctx.bell(n), fam, plus};
    const EavesdropConfig on_zero{identity(n), ctx.bell(n), fam, PureState::basis(n, 0)};
    const double want = 0.5 * (1.0 + std::sqrt(1.0 - theta * theta));
    dev = std::max(dev, std::abs(total_fidelity(on_plus) - want));
    dev = std::max(dev, std::abs(total_fidelity(on_zero) - 1.0));
  }
  return dev;
}

}  // namespace

VerifyReport run_verify(const VerifyOptions& options) {
  Context ctx;
  if (options.depth == VerifyDepth::quick) {
    ctx.dims = {2, 3};
    ctx.scenarios = 10;
  } else {
    ctx.dims = {2, 3, 4, 5};
    ctx.scenarios = 50;
  }
  ctx.seed = options.seed;
  ctx.corrupt = options.corrupt;

  const std::vector<Suite> suites = {
      {"bell_completeness", 1e-9, bell_completeness},
      {"measurement_completeness", 1e-9, measurement_completeness},
      {"ideal_teleportation", 1e-10, ideal_teleportation},
      {"oracle_equivalence", 1e-9, oracle_equivalence},
      {"probability_completeness", 1e-10, probability_completeness},
      {"marginal_laws", 1e-10, marginal_laws},
      {"ideal_decomposition", 1e-10, ideal_decomposition},
      {"sequential_decomposition", 1e-9, sequential_decomposition},
      {"closed_form_vs_oracle", 1e-9, closed_form_vs_oracle},
      {"time_order_irrelevance", 1e-10, time_order},
      {"mirror_correlation", 1e-9, mirror_correlation},
      {"closed_form_values", 1e-9, closed_form_values},
  };

  VerifyReport report;
  report.checks = parallel_map(suites.size(), options.workers, [&](std::size_t i) {
    Rng rng = ctx.rng(i);
    CheckResult result{suites[i].name, 0.0, suites[i].threshold, false};
    try {
      result.max_deviation = suites[i].run(ctx, rng);
      result.passed = result.max_deviation <= result.threshold;
    } catch (const Error&) {
      result.max_deviation = std::numeric_limits<double>::infinity();
    }
    return result;
  });
  return report;
}

std::string format_report(const VerifyReport& report) {
  std::ostringstream out;
  for (const CheckResult& c : report.checks) {
    out << (c.passed ? "PASS " : "FAIL ") << c.name << " max_deviation=" << format_number(c.max_deviation)
        << " threshold=" << format_number(c.threshold) << '\n';
  }
  out << (report.passed() ? "verify: all checks passed" : "verify: FAILED") << '\n';
  return out.str();
}

}  // namespace qtele
