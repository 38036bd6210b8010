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

// Seeded generators for reproducible random scenarios.

#include <cstdint>
#include <random>

#include "qtele/tensor_core.hpp"

namespace qtele {

using Rng = std::mt19937_64;

/// Entries i.i.d. complex standard Gaussian.
Matrix random_gaussian_matrix(std::size_t rows, std::size_t cols, Rng& rng);

/// Haar-distributed unitary: QR of a complex Gaussian matrix with the phases
/// of R's diagonal folded back into Q.
Matrix random_unitary(std::size_t n, Rng& rng);

Matrix random_hermitian(std::size_t n, Rng& rng);

PureState random_state(std::size_t n, Rng& rng);

}  // namespace qtele
