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

#include "qcf/core/state.hpp"

#include <cmath>
#include <stdexcept>

#include "qcf/core/ops.hpp"

namespace qcf {

StateVector::StateVector(Layout layout, Vector amplitudes, Normalization norm)
    : layout_(std::move(layout)), amplitudes_(std::move(amplitudes)), normalization_(norm) {
  if (amplitudes_.size() != layout_.total_dim()) {
    throw std::invalid_argument("StateVector: amplitude count " + std::to_string(amplitudes_.size()) +
                                " does not match layout " + layout_.to_string());
  }
  const double n2 = amplitudes_.squaredNorm();
  if (norm == Normalization::unit && std::abs(n2 - 1.0) > tolerance::norm) {
    throw std::invalid_argument("StateVector: squared norm " + std::to_string(n2) + " != 1");
  }
  if (norm == Normalization::sub && n2 > 1.0 + tolerance::norm) {
    throw std::invalid_argument("StateVector: sub-normalized state has squared norm > 1");
  }
}

StateVector StateVector::basis(const Layout& layout, std::span<const Index> digits) {
  return basis(layout, layout.flat(digits));
}

StateVector StateVector::basis(const Layout& layout, Index flat_index) {
  Vector v = Vector::Zero(layout.total_dim());
  if (flat_index < 0 || flat_index >= v.size()) throw std::out_of_range("StateVector::basis: index");
  v(flat_index) = 1.0;
  return StateVector(layout, std::move(v));
}

DensityMatrix::DensityMatrix(Layout layout, Matrix matrix, Normalization norm)
    : layout_(std::move(layout)), matrix_(std::move(matrix)), normalization_(norm) {
  if (matrix_.rows() != layout_.total_dim() || matrix_.cols() != layout_.total_dim()) {
    throw std::invalid_argument("DensityMatrix: shape does not match layout " + layout_.to_string());
  }
  if (!is_hermitian(matrix_, tolerance::hermitian)) {
    throw std::invalid_argument("DensityMatrix: matrix is not Hermitian");
  }
  const double tr = matrix_.trace().real();
  if (norm == Normalization::unit && std::abs(tr - 1.0) > tolerance::trace) {
    throw std::invalid_argument("DensityMatrix: trace " + std::to_string(tr) + " != 1");
  }
  if (norm == Normalization::sub && tr > 1.0 + tolerance::trace) {
    throw std::invalid_argument("DensityMatrix: sub-normalized trace exceeds 1");
  }
  const double scale = std::max(1.0, tr);
  if (matrix_.size() > 0 && min_eigenvalue(matrix_) < -tolerance::eigenvalue * scale) {
    throw std::invalid_argument("DensityMatrix: matrix has a negative eigenvalue");
  }
}

DensityMatrix DensityMatrix::pure(const StateVector& state) {
  return DensityMatrix(state.layout(), state.projector(),
                       state.normalization() == Normalization::unit ? Normalization::unit
                                                                    : Normalization::sub);
}

DensityMatrix DensityMatrix::maximally_mixed(const Layout& layout) {
  const Index d = layout.total_dim();
  return DensityMatrix(layout, Matrix::Identity(d, d) / static_cast<double>(d));
}

double DensityMatrix::purity() const { return (matrix_ * matrix_).trace().real(); }

HermitianOperator::HermitianOperator(Layout layout, Matrix matrix)
    : layout_(std::move(layout)), matrix_(std::move(matrix)) {
  if (matrix_.rows() != layout_.total_dim() || matrix_.cols() != layout_.total_dim()) {
    throw std::invalid_argument("HermitianOperator: shape does not match layout " + layout_.to_string());
  }
  if (!is_hermitian(matrix_, tolerance::hermitian)) {
    throw std::invalid_argument("HermitianOperator: matrix is not Hermitian");
  }
}

HermitianOperator HermitianOperator::identity(const Layout& layout) {
  const Index d = layout.total_dim();
  return HermitianOperator(layout, Matrix::Identity(d, d));
}

}  // namespace qcf
