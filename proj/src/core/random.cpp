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

#include "qcf/core/random.hpp"

#include <cmath>

namespace qcf {

Matrix random_ginibre(Index rows, Index cols, Rng& rng) {
  Matrix g(rows, cols);
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) g(i, j) = Complex(rng.normal(), rng.normal()) / std::sqrt(2.0);
  }
  return g;
}

Matrix random_unitary(Index n, Rng& rng) {
  Eigen::HouseholderQR<Matrix> qr(random_ginibre(n, n, rng));
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index j = 0; j < n; ++j) {
    const double a = std::abs(r(j, j));
    if (a > 0.0) q.col(j) *= r(j, j) / a;
  }
  return q;
}

StateVector random_state(const Layout& layout, Rng& rng) {
  Vector v = random_ginibre(layout.total_dim(), 1, rng).col(0);
  return StateVector(layout, v.normalized());
}

DensityMatrix random_density(const Layout& layout, Rng& rng, Index rank) {
  const Index d = layout.total_dim();
  if (rank < 0) rank = d;
  const Matrix g = random_ginibre(d, rank, rng);
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix(layout, hermitian_part(rho));
}

Matrix random_hermitian(Index n, Rng& rng) { return hermitian_part(random_ginibre(n, n, rng)); }

}  // namespace qcf
