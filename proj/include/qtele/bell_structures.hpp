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

// Maximally entangled resources, mirror operators, the Weyl shift/clock
// unitaries and complete chi-weighted Bell measurement families.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "qtele/tensor_core.hpp"

namespace qtele {

/// Completeness of a Bell family is enforced to this max-norm deviation.
inline constexpr double kBellCompletenessTolerance = 1e-9;

/// (1/sqrt(N)) sum_n (u0|n>)_R (x) |n>_B, with R the slow factor.
struct EntangledResource {
  std::size_t dim_n = 0;
  Matrix u0;
  PureState state;
};

/// `u0` defaults to the identity. Throws RangeError for n < 2 and
/// NotUnitaryError for a non-unitary or mis-sized `u0`.
EntangledResource make_entangled_resource(std::size_t n, const std::optional<Matrix>& u0 = std::nullopt);

/// The reference-side operator perfectly correlated with `o_b` across the
/// resource built from `u0`: u0 * o_b^T * u0^-1.
Matrix mirror_operator(const Matrix& o_b, const Matrix& u0);

/// Cyclic shift X|k> = |k+1 mod n>.
Matrix shift_matrix(std::size_t n);
/// Clock Z|k> = w^k |k>, w = exp(2 pi i / n).
Matrix clock_matrix(std::size_t n);

/// X^shift * Z^phase.
Matrix weyl_unitary(std::size_t n, std::size_t shift, std::size_t phase);

struct BellOutcome {
  std::string label;
  Matrix unitary;
  double chi = 1.0;
};

/// A set of Bell outcomes {U(m), chi(m)} whose projectors
/// |P(m)><P(m)| sum to the identity on A (x) R.
class BellFamily {
 public:
  /// The n^2 Weyl outcomes m = shift * n + phase, all with chi = 1.
  static BellFamily weyl(std::size_t n);

  /// Validates unitarity, positive weights and completeness.
  static BellFamily from_outcomes(std::size_t n, std::vector<BellOutcome> outcomes);

  /// Skips the completeness check (unitarity and weights are still checked).
  /// Only for exercising the diagnostics on deliberately broken families.
  static BellFamily unchecked(std::size_t n, std::vector<BellOutcome> outcomes);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return outcomes_.size(); }
  const std::vector<BellOutcome>& outcomes() const { return outcomes_; }

  /// Throws UnknownLabelError for an out-of-range index.
  const BellOutcome& at(std::size_t m) const;

  /// Index of the outcome with the given label, or UnknownLabelError.
  std::size_t index_of(const std::string& label) const;

  /// max |sum_m |P(m)><P(m)| - 1| on the N^2-dimensional A (x) R space.
  double completeness_deviation() const;

 private:
  BellFamily(std::size_t n, std::vector<BellOutcome> outcomes);

  std::size_t dim_;
  std::vector<BellOutcome> outcomes_;
};

/// sqrt(chi(m)/N) sum_n (U(m)|n>)_A (x) (u0|n>)_R; squared norm chi(m).
Vector bell_outcome_state(const BellFamily& family, std::size_t m, const Matrix& u0);

}  // namespace qtele
