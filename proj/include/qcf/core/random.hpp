// Copyright 2026 The qcoinflip Authors
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

#ifndef QCF_CORE_RANDOM_HPP
#define QCF_CORE_RANDOM_HPP

#include "qcf/core/rng.hpp"
#include "qcf/core/state.hpp"

namespace qcf {

Matrix random_ginibre(Index rows, Index cols, Rng& rng);
/// Haar-distributed unitary (QR of a Ginibre matrix with phase fix).
Matrix random_unitary(Index n, Rng& rng);
StateVector random_state(const Layout& layout, Rng& rng);
/// Random density matrix of the given rank (full rank by default).
DensityMatrix random_density(const Layout& layout, Rng& rng, Index rank = -1);
Matrix random_hermitian(Index n, Rng& rng);

}  // namespace qcf

#endif  // QCF_CORE_RANDOM_HPP
