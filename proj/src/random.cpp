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

#include "qtele/random.hpp"

#include <cmath>

namespace qtele {

Matrix random_gaussian_matrix(std::size_t rows, std::size_t cols, Rng& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  // Fill in a fixed row-major order so the stream is layout-independent.
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      m(i, j) = Complex(re, im);
    }
  }
  return m;
}

Matrix random_unitary(std::size_t n, Rng& rng) {
  const Matrix z = random_gaussian_matrix(n, n, rng);
  Eigen::HouseholderQR<Matrix> qr(z);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index k = 0; k < q.cols(); ++k) {
    const Complex d = r(k, k);
    const double mag = std::abs(d);
    if (mag > 0.0) q.col(k) *= d / mag;
  }
  return q;
}

Matrix random_hermitian(std::size_t n, Rng& rng) {
  const Matrix g = random_gaussian_matrix(n, n, rng);
  return 0.5 * (g + g.adjoint());
}

PureState random_state(std::size_t n, Rng& rng) {
  const Matrix g = random_gaussian_matrix(n, 1, rng);
  return PureState::normalize(g.col(0));
}

}  // namespace qtele
