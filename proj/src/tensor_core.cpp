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

#include "qtele/tensor_core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <utility>

namespace qtele {

Tolerance::Tolerance(double epsilon) : epsilon_(epsilon) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw RangeError("tolerance must be a positive finite number, got " + std::to_string(epsilon));
  }
}

PureState::PureState(Vector amplitudes) : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() == 0) throw DimensionError("pure state must have dimension >= 1");
  if (!amplitudes_.allFinite()) throw ShapeError("pure state has non-finite amplitudes");
  const double norm2 = amplitudes_.squaredNorm();
  if (std::abs(norm2 - 1.0) > kNormTolerance) {
    throw RangeError("pure state is not normalized (squared norm " + std::to_string(norm2) + ")");
  }
}

PureState PureState::normalize(const Vector& amplitudes) {
  if (!amplitudes.allFinite()) throw ShapeError("pure state has non-finite amplitudes");
  const double norm = amplitudes.norm();
  if (norm == 0.0) throw RangeError("cannot normalize the zero vector");
  return PureState(amplitudes / norm);
}

PureState PureState::basis(std::size_t dim, std::size_t k) {
  if (k >= dim) throw RangeError("basis index out of range");
  Vector v = Vector::Zero(static_cast<Eigen::Index>(dim));
  v(static_cast<Eigen::Index>(k)) = 1.0;
  return PureState(std::move(v));
}

double PureState::fidelity(const PureState& other) const {
  if (other.dim() != dim()) throw DimensionError("fidelity between states of different dimension");
  return std::norm(amplitudes_.dot(other.amplitudes_));
}

void require_valid(const Matrix& m, const char* what) {
  if (m.rows() < 1 || m.cols() < 1) throw ShapeError(std::string(what) + " is empty");
  if (!m.allFinite()) throw ShapeError(std::string(what) + " has non-finite entries");
}

void require_square(const Matrix& m, const char* what) {
  require_valid(m, what);
  if (m.rows() != m.cols()) {
    throw ShapeError(std::string(what) + " must be square, got " + std::to_string(m.rows()) + "x" +
                     std::to_string(m.cols()));
  }
}

double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

Matrix identity(std::size_t dim) {
  const auto n = static_cast<Eigen::Index>(dim);
  return Matrix::Identity(n, n);
}

Matrix tensor_product(const Matrix& a, const Matrix& b) {
  require_valid(a, "left tensor factor");
  require_valid(b, "right tensor factor");
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Vector tensor_product(const Vector& a, const Vector& b) {
  if (a.size() == 0 || b.size() == 0) throw ShapeError("tensor factor is empty");
  Vector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

Matrix partial_trace(const Matrix& rho, std::span<const std::size_t> dims, std::size_t keep) {
  require_square(rho, "partial trace operand");
  if (dims.empty()) throw DimensionError("partial trace needs at least one subsystem");
  if (keep >= dims.size()) throw DimensionError("kept subsystem index out of range");
  if (std::find(dims.begin(), dims.end(), std::size_t{0}) != dims.end()) {
    throw DimensionError("subsystem dimensions must be >= 1");
  }
  const std::size_t total =
      std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
  if (total != static_cast<std::size_t>(rho.rows())) {
    throw DimensionError("subsystem dimensions multiply to " + std::to_string(total) +
                         " but operand has dimension " + std::to_string(rho.rows()));
  }
  // Index = (outer * dk + k) * inner + rest, with `outer` spanning the
  // subsystems before `keep` and `inner` those after it.
  const std::size_t dk = dims[keep];
  const std::size_t inner = std::accumulate(dims.begin() + static_cast<std::ptrdiff_t>(keep) + 1,
                                            dims.end(), std::size_t{1}, std::multiplies<>());
  const std::size_t outer = total / (dk * inner);

  Matrix out = Matrix::Zero(static_cast<Eigen::Index>(dk), static_cast<Eigen::Index>(dk));
  for (std::size_t i = 0; i < dk; ++i) {
    for (std::size_t j = 0; j < dk; ++j) {
      Complex acc{};
      for (std::size_t o = 0; o < outer; ++o) {
        for (std::size_t r = 0; r < inner; ++r) {
          const auto row = static_cast<Eigen::Index>((o * dk + i) * inner + r);
          const auto col = static_cast<Eigen::Index>((o * dk + j) * inner + r);
          acc += rho(row, col);
        }
      }
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = acc;
    }
  }
  return out;
}

Matrix dagger(const Matrix& m) {
  require_valid(m);
  return m.adjoint();
}

Matrix transpose_in_basis(const Matrix& m) {
  require_square(m, "transpose operand");
  return m.transpose();
}

namespace {

double hermitian_deviation(const Matrix& m) { return max_abs(m - m.adjoint()); }

}  // namespace

Matrix hermitian_sqrt(const Matrix& m, Tolerance tol) {
  require_square(m, "square-root operand");
  const double herm_dev = hermitian_deviation(m);
  if (herm_dev > tol.epsilon()) {
    throw ShapeError("square-root operand is not Hermitian (deviation " + std::to_string(herm_dev) +
                     ")");
  }
  const Matrix sym = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> eig(sym);
  if (eig.info() != Eigen::Success) throw ShapeError("eigendecomposition did not converge");
  Eigen::VectorXd values = eig.eigenvalues();
  const double floor =
      64.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, values.cwiseAbs().maxCoeff());
  for (Eigen::Index k = 0; k < values.size(); ++k) {
    if (values(k) < -tol.epsilon()) {
      throw NotPsdError("square-root operand has eigenvalue " + std::to_string(values(k)));
    }
    values(k) = values(k) <= floor ? 0.0 : std::sqrt(values(k));
  }
  const Matrix& vecs = eig.eigenvectors();
  return vecs * values.cast<Complex>().asDiagonal() * vecs.adjoint();
}

bool is_hermitian(const Matrix& m, Tolerance tol) {
  if (m.rows() != m.cols() || m.size() == 0) return false;
  return hermitian_deviation(m) <= tol.epsilon();
}

bool is_unitary(const Matrix& m, Tolerance tol) {
  if (m.rows() != m.cols() || m.size() == 0) return false;
  return max_abs(m.adjoint() * m - Matrix::Identity(m.rows(), m.cols())) <= tol.epsilon();
}

PredicateReport check_predicates(const Matrix& m, Tolerance tol) {
  require_valid(m);
  PredicateReport report;
  if (m.rows() != m.cols()) {
    report.hermitian_deviation = std::numeric_limits<double>::infinity();
    report.unitary_deviation = std::numeric_limits<double>::infinity();
    report.min_eigenvalue = std::numeric_limits<double>::quiet_NaN();
    return report;
  }
  report.trace = m.trace();
  report.hermitian_deviation = hermitian_deviation(m);
  report.unitary_deviation = max_abs(m.adjoint() * m - Matrix::Identity(m.rows(), m.cols()));
  report.is_hermitian = report.hermitian_deviation <= tol.epsilon();
  report.is_unitary = report.unitary_deviation <= tol.epsilon();
  Eigen::SelfAdjointEigenSolver<Matrix> eig(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly);
  report.min_eigenvalue = eig.eigenvalues().minCoeff();
  report.is_psd = report.is_hermitian && report.min_eigenvalue >= -tol.epsilon();
  return report;
}

}  // namespace qtele
