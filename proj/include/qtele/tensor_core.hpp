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

// Dense complex linear algebra shared by every other module.
//
// Multipartite objects use the global subsystem order A (input) x R
// (reference) x B (output), with the first factor as the slowest index.

#include <complex>
#include <cstddef>
#include <span>

#include <Eigen/Dense>

#include "qtele/errors.hpp"

namespace qtele {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Absolute numerical tolerance; must be strictly positive.
class Tolerance {
 public:
  static constexpr double kDefault = 1e-10;

  constexpr Tolerance() = default;
  explicit Tolerance(double epsilon);

  constexpr double epsilon() const { return epsilon_; }

 private:
  double epsilon_ = kDefault;
};

/// A normalized state vector. Construction fails unless the squared norm is
/// within 1e-12 of one; use `normalize` for arbitrary nonzero vectors.
class PureState {
 public:
  static constexpr double kNormTolerance = 1e-12;

  explicit PureState(Vector amplitudes);

  static PureState normalize(const Vector& amplitudes);
  static PureState basis(std::size_t dim, std::size_t k);

  std::size_t dim() const { return static_cast<std::size_t>(amplitudes_.size()); }
  const Vector& amplitudes() const { return amplitudes_; }

  /// |<this|other>|^2
  double fidelity(const PureState& other) const;

 private:
  Vector amplitudes_;
};

/// Throws ShapeError on an empty matrix or any NaN/Inf entry.
void require_valid(const Matrix& m, const char* what = "matrix");
void require_square(const Matrix& m, const char* what = "matrix");

/// Largest absolute entry, the max-norm used for all deviation reports.
double max_abs(const Matrix& m);

Matrix identity(std::size_t dim);

/// Kronecker product; `a` carries the slow index.
Matrix tensor_product(const Matrix& a, const Matrix& b);
Vector tensor_product(const Vector& a, const Vector& b);

/// Reduced matrix on subsystem `keep` of a square operator on
/// dims[0] x dims[1] x ... (dims[0] slowest).
Matrix partial_trace(const Matrix& rho, std::span<const std::size_t> dims, std::size_t keep);

Matrix dagger(const Matrix& m);

/// Entry-wise transpose in the computational basis, without conjugation.
Matrix transpose_in_basis(const Matrix& m);

/// Unique PSD square root of a Hermitian PSD matrix. Eigenvalues in
/// [-tol, 0) are clamped to zero, as are positive ones at round-off level;
/// anything below -tol is rejected.
Matrix hermitian_sqrt(const Matrix& m, Tolerance tol = {});

bool is_hermitian(const Matrix& m, Tolerance tol = {});
bool is_unitary(const Matrix& m, Tolerance tol = {});

struct PredicateReport {
  bool is_hermitian = false;
  bool is_unitary = false;
  bool is_psd = false;
  Complex trace{};
  double hermitian_deviation = 0.0;
  double unitary_deviation = 0.0;
  /// Smallest eigenvalue of the Hermitian part.
  double min_eigenvalue = 0.0;
};

PredicateReport check_predicates(const Matrix& m, Tolerance tol = {});

}  // namespace qtele
