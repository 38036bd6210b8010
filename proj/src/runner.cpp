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

#include "qtele/runner.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "qtele/eavesdrop_analysis.hpp"
#include "qtele/parallel.hpp"

namespace qtele {
namespace {

struct Entry {
  std::size_t m = 0;
  std::optional<std::size_t> l;
  std::optional<std::size_t> branch;
  double probability = 0.0;
  std::optional<double> fidelity;
};

struct PointEval {
  std::vector<Entry> entries;
  double total_fidelity = 0.0;
  double oracle_deviation = 0.0;
};

PointEval evaluate(const RunSpec& spec, std::optional<double> theta, const PureState& input,
                   const RunOptions& options) {
  const ScenarioConfig cfg = scenario_for(spec, theta, input);
  const std::vector<TeleportRecord> fast = fast_run(cfg);
  const std::vector<TeleportRecord> oracle = run_oracle(cfg);
  const RecordComparison cmp = compare_records(fast, oracle);
  const double tol = options.agreement_tolerance;
  if (!cmp.agrees(tol)) {
    std::ostringstream msg;
    msg << "fast path disagrees with the oracle (probability " << cmp.max_probability_deviation
        << ", output " << std::max(cmp.max_raw_deviation, cmp.max_output_deviation) << ")";
    throw InvariantViolation(msg.str());
  }

  PointEval eval;
  eval.oracle_deviation =
      std::max({cmp.max_probability_deviation, cmp.max_raw_deviation, cmp.max_output_deviation});

  const Vector& psi = input.amplitudes();
  double sum = 0.0;
  for (const TeleportRecord& rec : fast) {
    sum += rec.probability;
    eval.total_fidelity += std::norm(psi.dot(rec.raw_output));
  }
  if (std::abs(sum - 1.0) > tol) {
    throw InvariantViolation("outcome probabilities sum to " + format_number(sum));
  }

  if (theta && std::holds_alternative<std::monostate>(spec.effect_b)) {
    const EavesdropConfig ec{spec.u0, spec.bell, std::get<MeasurementFamily>(cfg.effect_r), input};
    const std::vector<double> table = joint_distribution(ec);
    for (std::size_t i = 0; i < table.size(); ++i) {
      if (std::abs(table[i] - fast[i].probability) > tol) {
        throw InvariantViolation("closed-form p(l,m) disagrees with the oracle at row " +
                                 std::to_string(i));
      }
    }
  }

  if (!spec.record_b_outcomes && is_branching(spec.effect_b)) {
    for (MixedRecord& mixed : group_unrecorded(fast, input)) {
      eval.entries.push_back({mixed.m, mixed.l, std::nullopt, mixed.probability, mixed.fidelity});
    }
  } else {
    for (const TeleportRecord& rec : fast) {
      Entry e{rec.m, rec.l, rec.branch, rec.probability, std::nullopt};
      if (rec.output) e.fidelity = rec.output->fidelity(input);
      eval.entries.push_back(e);
    }
  }
  return eval;
}

std::vector<double> probabilities(const PointEval& eval) {
  std::vector<double> out;
  for (const Entry& e : eval.entries) out.push_back(e.probability);
  return out;
}

std::string optional_cell(const std::optional<double>& v) {
  return v ? format_number(*v) : std::string();
}

std::string optional_cell(const std::optional<std::size_t>& v) {
  return v ? std::to_string(*v) : std::string();
}

const char* kind_name(TeleportRow::Kind kind) {
  switch (kind) {
    case TeleportRow::Kind::joint:
      return "joint";
    case TeleportRow::Kind::marginal_l:
      return "marginal_l";
    case TeleportRow::Kind::marginal_m:
      return "marginal_m";
    case TeleportRow::Kind::total:
      return "total";
  }
  return "";
}

}  // namespace

ScenarioConfig scenario_for(const RunSpec& spec, std::optional<double> theta,
                            const std::optional<PureState>& input) {
  ChannelEffect effect_r;
  if (theta) effect_r = strength_family(spec.n, spec.eavesdrop_basis, *theta);
  return ScenarioConfig{spec.n,      spec.u0,        spec.bell, input.value_or(spec.input),
                        effect_r,    spec.effect_b,  true,      spec.record_b_outcomes};
}

TeleportResult run_teleport(const RunSpec& spec, const RunOptions& options) {
  if (spec.theta_sweep) {
    throw ConfigError("eavesdrop.theta_sweep", "the teleport command needs a fixed theta");
  }
  const PointEval eval = evaluate(spec, spec.theta, spec.input, options);

  TeleportResult result;
  result.total_fidelity = eval.total_fidelity;
  result.oracle_deviation = eval.oracle_deviation;
  result.p_m.assign(spec.bell.size(), 0.0);
  if (spec.has_eavesdropper()) result.p_l.assign(spec.n, 0.0);
  for (const Entry& e : eval.entries) {
    result.rows.push_back({TeleportRow::Kind::joint, e.l, spec.bell.at(e.m).label, e.branch,
                           e.probability, e.fidelity});
    result.probability_sum += e.probability;
    result.p_m[e.m] += e.probability;
    if (e.l) result.p_l[*e.l] += e.probability;
  }
  for (std::size_t l = 0; l < result.p_l.size(); ++l) {
    result.rows.push_back(
        {TeleportRow::Kind::marginal_l, l, std::nullopt, std::nullopt, result.p_l[l], std::nullopt});
  }
  for (std::size_t m = 0; m < result.p_m.size(); ++m) {
    result.rows.push_back({TeleportRow::Kind::marginal_m, std::nullopt, spec.bell.at(m).label,
                           std::nullopt, result.p_m[m], std::nullopt});
  }
  result.rows.push_back({TeleportRow::Kind::total, std::nullopt, std::nullopt, std::nullopt,
                         result.probability_sum, result.total_fidelity});
  return result;
}

std::vector<SweepRow> run_sweep(const RunSpec& spec, const RunOptions& options) {
  std::vector<double> thetas;
  if (spec.theta_sweep) {
    thetas = spec.theta_sweep->points();
  } else if (spec.theta) {
    thetas = {*spec.theta};
  } else {
    throw ConfigError("eavesdrop", "the sweep command needs theta or theta_sweep");
  }
  return parallel_map(thetas.size(), options.workers, [&](std::size_t i) {
    const double theta = thetas[i];
    SweepRow row;
    row.theta = theta;
    row.total_fidelity = evaluate(spec, theta, spec.input, options).total_fidelity;
    const PointEval a = evaluate(spec, theta, spec.distinguish.at(0), options);
    const PointEval b = evaluate(spec, theta, spec.distinguish.at(1), options);
    row.distinguishability = total_variation(probabilities(a), probabilities(b));
    return row;
  });
}

std::string format_number(double value) {
  if (value == 0.0) value = 0.0;  // folds -0 into 0
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

std::string teleport_csv(const TeleportResult& result) {
  std::ostringstream out;
  out << "row,l,m,branch,probability,fidelity\n";
  for (const TeleportRow& row : result.rows) {
    out << kind_name(row.kind) << ',' << optional_cell(row.l) << ',' << row.m.value_or("") << ','
        << optional_cell(row.branch) << ',' << optional_cell(row.probability) << ','
        << optional_cell(row.fidelity) << '\n';
  }
  return out.str();
}

std::string teleport_summary(const RunSpec& spec, const TeleportResult& result) {
  std::ostringstream out;
  out << "n = " << spec.n << ", input = " << spec.input_name;
  if (spec.theta) out << ", eavesdrop theta = " << format_number(*spec.theta);
  out << '\n';
  out << "outcomes: " << (result.rows.size() - result.p_l.size() - result.p_m.size() - 1)
      << ", probability sum = " << format_number(result.probability_sum) << '\n';
  if (!result.p_l.empty()) {
    out << "p(l):";
    for (double p : result.p_l) out << ' ' << format_number(p);
    out << '\n';
  }
  out << "p(m):";
  for (double p : result.p_m) out << ' ' << format_number(p);
  out << '\n';
  out << "total fidelity = " << format_number(result.total_fidelity) << '\n';
  out << "oracle agreement: max deviation " << format_number(result.oracle_deviation) << '\n';
  return out.str();
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  out << "theta,total_fidelity,distinguishability\n";
  for (const SweepRow& row : rows) {
    out << format_number(row.theta) << ',' << format_number(row.total_fidelity) << ','
        << format_number(row.distinguishability) << '\n';
  }
  return out.str();
}

}  // namespace qtele
