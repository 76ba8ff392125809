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

#ifndef QCF_CORE_STATE_HPP
#define QCF_CORE_STATE_HPP

#include <span>

#include "qcf/core/layout.hpp"

namespace qcf {

/// Whether a state is required to have unit norm/trace. Sub-normalized states
/// show up as the branches of a measurement that has not been renormalized.
enum class Normalization { unit, sub };

namespace tolerance {
inline constexpr double norm = 1e-12;
inline constexpr double hermitian = 1e-12;
inline constexpr double trace = 1e-10;
inline constexpr double eigenvalue = 1e-10;
inline constexpr double unitary = 1e-10;
inline constexpr double psd = 1e-9;
}  // namespace tolerance

class StateVector {
 public:
  /// Trivial one-dimensional state over the empty layout.
  StateVector() : amplitudes_(Vector::Ones(1)), normalization_(Normalization::unit) {}
  StateVector(Layout layout, Vector amplitudes, Normalization norm = Normalization::unit);

  /// Computational basis state |d0 d1 ...>.
  static StateVector basis(const Layout& layout, std::span<const Index> digits);
  static StateVector basis(const Layout& layout, Index flat_index);

  const Layout& layout() const { return layout_; }
  const Vector& amplitudes() const { return amplitudes_; }
  Complex amplitude(Index i) const { return amplitudes_(i); }
  Index dim() const { return amplitudes_.size(); }
  Normalization normalization() const { return normalization_; }
  double norm() const { return amplitudes_.norm(); }

  /// Projector |psi><psi| as a matrix.
  Matrix projector() const { return amplitudes_ * amplitudes_.adjoint(); }

 private:
  Layout layout_;
  Vector amplitudes_;
  Normalization normalization_;
};

class DensityMatrix {
 public:
  DensityMatrix(Layout layout, Matrix matrix, Normalization norm = Normalization::unit);

  static DensityMatrix pure(const StateVector& state);
  static DensityMatrix maximally_mixed(const Layout& layout);

  const Layout& layout() const { return layout_; }
  const Matrix& matrix() const { return matrix_; }
  Index dim() const { return matrix_.rows(); }
  Normalization normalization() const { return normalization_; }
  double trace() const { return matrix_.trace().real(); }
  double purity() const;

 private:
  Layout layout_;
  Matrix matrix_;
  Normalization normalization_;
};

class HermitianOperator {
 public:
  HermitianOperator(Layout layout, Matrix matrix);

  static HermitianOperator identity(const Layout& layout);

  const Layout& layout() const { return layout_; }
  const Matrix& matrix() const { return matrix_; }
  Index dim() const { return matrix_.rows(); }

 private:
  Layout layout_;
  Matrix matrix_;
};

template <typename Derived>
double hermiticity_error(const Eigen::MatrixBase<Derived>& m) {
  if (m.size() == 0) return 0.0;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

/// Hermitian check relative to the matrix scale: max|M - M^H| <= tol * max(1, max|M|).
template <typename Derived>
bool is_hermitian(const Eigen::MatrixBase<Derived>& m, double tol = tolerance::hermitian) {
  if (m.rows() != m.cols()) return false;
  if (m.size() == 0) return true;
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  return hermiticity_error(m) <= tol * scale;
}

template <typename Derived>
Matrix hermitian_part(const Eigen::MatrixBase<Derived>& m) {
  return (m + m.adjoint()) / 2.0;
}

template <typename Derived>
bool is_unitary(const Eigen::MatrixBase<Derived>& u, double tol = tolerance::unitary) {
  if (u.rows() != u.cols()) return false;
  const Matrix g = u.adjoint() * u;
  return (g - Matrix::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff() <= tol;
}

}  // namespace qcf

#endif  // QCF_CORE_STATE_HPP
