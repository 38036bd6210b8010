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

#include "qtele/bell_structures.hpp"

#include <cmath>
#include <numbers>
#include <utility>

namespace qtele {
namespace {

constexpr double kUnitaryTolerance = 1e-10;

void require_unitary(const Matrix& u, std::size_t n, const char* what) {
  require_square(u, what);
  if (static_cast<std::size_t>(u.rows()) != n) {
    throw DimensionError(std::string(what) + " must be " + std::to_string(n) + "x" +
                         std::to_string(n));
  }
  if (!is_unitary(u, Tolerance(kUnitaryTolerance))) {
    throw NotUnitaryError(std::string(what) + " is not unitary");
  }
}

Vector resource_vector(std::size_t n, const Matrix& u0) {
  const auto dim = static_cast<Eigen::Index>(n);
  Vector state = Vector::Zero(dim * dim);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (Eigen::Index k = 0; k < dim; ++k) {
    Vector ket_b = Vector::Zero(dim);
    ket_b(k) = 1.0;
    state += scale * tensor_product(Vector(u0.col(k)), ket_b);
  }
  return state;
}

}  // namespace

EntangledResource make_entangled_resource(std::size_t n, const std::optional<Matrix>& u0) {
  if (n < 2) throw RangeError("entangled resource needs n >= 2");
  Matrix u = u0.value_or(identity(n));
  require_unitary(u, n, "resource unitary u0");
  PureState state(resource_vector(n, u));
  return EntangledResource{n, std::move(u), std::move(state)};
}

Matrix mirror_operator(const Matrix& o_b, const Matrix& u0) {
  require_square(o_b, "mirrored operator");
  require_unitary(u0, static_cast<std::size_t>(o_b.rows()), "resource unitary u0");
  return u0 * transpose_in_basis(o_b) * u0.adjoint();
}

Matrix shift_matrix(std::size_t n) {
  const auto dim = static_cast<Eigen::Index>(n);
  Matrix x = Matrix::Zero(dim, dim);
  for (Eigen::Index k = 0; k < dim; ++k) x((k + 1) % dim, k) = 1.0;
  return x;
}

Matrix clock_matrix(std::size_t n) {
  const auto dim = static_cast<Eigen::Index>(n);
  Matrix z = Matrix::Zero(dim, dim);
  for (Eigen::Index k = 0; k < dim; ++k) {
    z(k, k) = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n));
  }
  return z;
}

Matrix weyl_unitary(std::size_t n, std::size_t shift, std::size_t phase) {
  if (n < 1) throw RangeError("Weyl operators need n >= 1");
  if (shift >= n || phase >= n) throw RangeError("Weyl index out of range");
  // Build X^a Z^b entry-wise: (X^a Z^b)|k> = w^(b k) |k + a>.
  const auto dim = static_cast<Eigen::Index>(n);
  Matrix u = Matrix::Zero(dim, dim);
  for (std::size_t k = 0; k < n; ++k) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>((phase * k) % n) /
                         static_cast<double>(n);
    u(static_cast<Eigen::Index>((k + shift) % n), static_cast<Eigen::Index>(k)) =
        std::polar(1.0, angle);
  }
  return u;
}

BellFamily::BellFamily(std::size_t n, std::vector<BellOutcome> outcomes)
    : dim_(n), outcomes_(std::move(outcomes)) {
  if (n < 2) throw RangeError("Bell family needs n >= 2");
  if (outcomes_.empty()) throw InvalidFamilyError("Bell family has no outcomes");
  for (const auto& o : outcomes_) {
    require_unitary(o.unitary, n, "Bell outcome unitary");
    if (!(o.chi > 0.0) || !std::isfinite(o.chi)) {
      throw InvalidFamilyError("Bell outcome '" + o.label + "' has non-positive weight");
    }
  }
}

BellFamily BellFamily::weyl(std::size_t n) {
  std::vector<BellOutcome> outcomes;
  outcomes.reserve(n * n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      outcomes.push_back({std::to_string(a) + ":" + std::to_string(b), weyl_unitary(n, a, b), 1.0});
    }
  }
  return from_outcomes(n, std::move(outcomes));
}

BellFamily BellFamily::from_outcomes(std::size_t n, std::vector<BellOutcome> outcomes) {
  BellFamily family(n, std::move(outcomes));
  const double dev = family.completeness_deviation();
  if (!(dev <= kBellCompletenessTolerance)) {
    throw InvalidFamilyError("Bell family is not complete (deviation " + std::to_string(dev) + ")");
  }
  return family;
}

BellFamily BellFamily::unchecked(std::size_t n, std::vector<BellOutcome> outcomes) {
  return BellFamily(n, std::move(outcomes));
}

const BellOutcome& BellFamily::at(std::size_t m) const {
  if (m >= outcomes_.size()) throw UnknownLabelError("Bell outcome index " + std::to_string(m));
  return outcomes_[m];
}

std::size_t BellFamily::index_of(const std::string& label) const {
  for (std::size_t m = 0; m < outcomes_.size(); ++m) {
    if (outcomes_[m].label == label) return m;
  }
  throw UnknownLabelError("unknown Bell outcome '" + label + "'");
}

double BellFamily::completeness_deviation() const {
  // The sum is conjugated by (1 (x) u0) for other resource unitaries, so
  // checking with u0 = 1 covers every u0.
  const Matrix u0 = identity(dim_);
  const auto d2 = static_cast<Eigen::Index>(dim_ * dim_);
  Matrix sum = Matrix::Zero(d2, d2);
  for (std::size_t m = 0; m < outcomes_.size(); ++m) {
    const Vector p = bell_outcome_state(*this, m, u0);
    sum.noalias() += p * p.adjoint();
  }
  return max_abs(sum - Matrix::Identity(d2, d2));
}

Vector bell_outcome_state(const BellFamily& family, std::size_t m, const Matrix& u0) {
  const BellOutcome& outcome = family.at(m);
  const std::size_t n = family.dim();
  require_unitary(u0, n, "resource unitary u0");
  const auto dim = static_cast<Eigen::Index>(n);
  Vector state = Vector::Zero(dim * dim);
  for (Eigen::Index k = 0; k < dim; ++k) {
    state += tensor_product(Vector(outcome.unitary.col(k)), Vector(u0.col(k)));
  }
  return std::sqrt(outcome.chi / static_cast<double>(n)) * state;
}

}  // namespace qtele
