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

#ifndef QCF_CORE_OPS_HPP
#define QCF_CORE_OPS_HPP

#include <span>
#include <vector>

#include "qcf/core/rng.hpp"
#include "qcf/core/state.hpp"

namespace qcf {

/// Kronecker product a (x) b.
template <typename DerivedA, typename DerivedB>
Eigen::Matrix<typename DerivedA::Scalar, Eigen::Dynamic, Eigen::Dynamic> kron(
    const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  using Result = Eigen::Matrix<typename DerivedA::Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  Result out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

StateVector tensor(const StateVector& a, const StateVector& b);
DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);
HermitianOperator tensor(const HermitianOperator& a, const HermitianOperator& b);

/// Partial trace of a square matrix over every factor not listed in `keep`.
/// The result keeps the listed factors in their original (ascending) order.
Matrix partial_trace(const Matrix& m, const Layout& layout, std::span<const int> keep);
DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep);
inline DensityMatrix partial_trace(const DensityMatrix& rho, std::initializer_list<int> keep) {
  return partial_trace(rho, std::span<const int>(keep.begin(), keep.size()));
}

/// Permutation matrix P with (P v) laid out as layout.select(order).
Matrix permutation_matrix(const Layout& layout, std::span<const int> order);
StateVector permute_factors(const StateVector& state, std::span<const int> order);

/// Applies `op` (acting on the listed factors, in the listed order) to every
/// column of `columns`, identity elsewhere.
Matrix apply_on_factors(const Matrix& columns, const Layout& layout, const Matrix& op,
                        std::span<const int> factors);

/// Full-space matrix of `op` acting on `factors`.
Matrix embed(const Matrix& op, const Layout& layout, std::span<const int> factors);
inline Matrix embed(const Matrix& op, const Layout& layout, std::initializer_list<int> factors) {
  return embed(op, layout, std::span<const int>(factors.begin(), factors.size()));
}

StateVector apply_unitary(const StateVector& state, const Matrix& u, std::span<const int> factors);
inline StateVector apply_unitary(const StateVector& state, const Matrix& u,
                                 std::initializer_list<int> factors) {
  return apply_unitary(state, u, std::span<const int>(factors.begin(), factors.size()));
}

/// Schatten-1 distance sum |eig(rho - sigma)|.
double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);

struct HelstromResult {
  Matrix projector0;  // guess "rho0"
  Matrix projector1;  // guess "rho1"
  double success_probability = 0.0;   // 1/2 + ||rho0 - rho1||_t / 4
  double achieved_probability = 0.0;  // tr(P0 rho0)/2 + tr(P1 rho1)/2
};

/// Optimal two-outcome discrimination of rho0 vs rho1 with equal priors.
HelstromResult helstrom(const DensityMatrix& rho0, const DensityMatrix& rho1);

struct PsdReport {
  bool psd = false;
  double min_eigenvalue = 0.0;
};

PsdReport is_psd(const HermitianOperator& h, double tol = tolerance::psd);
/// Same check on a raw matrix; throws std::invalid_argument if not Hermitian.
PsdReport is_psd(const Matrix& h, double tol = tolerance::psd);
double min_eigenvalue(const Matrix& hermitian);

/// Born probabilities of computational-basis outcomes on `factors`, indexed by
/// the flat index over layout.select(factors).
RealVector outcome_probabilities(const StateVector& state, std::span<const int> factors);

struct MeasurementResult {
  std::vector<Index> outcome;  // one digit per measured factor
  double probability = 0.0;
  StateVector post_state;
};

/// Computational-basis measurement of `factors`, sampled from `rng`.
MeasurementResult measure(const StateVector& state, std::span<const int> factors, Rng& rng);
inline MeasurementResult measure(const StateVector& state, std::initializer_list<int> factors,
                                 Rng& rng) {
  return measure(state, std::span<const int>(factors.begin(), factors.size()), rng);
}

struct ProjectiveResult {
  bool accepted = false;  // outcome "inside the projector"
  double probability = 0.0;
  StateVector post_state;
};

/// Two-outcome measurement {P, 1-P}; P acts on `factors`.
ProjectiveResult measure_projector(const StateVector& state, const Matrix& projector,
                                   std::span<const int> factors, Rng& rng);

/// Drops factors that are known to be in computational basis states
/// `digits`; the remaining factors keep their order. Result is unnormalized
/// if the state has weight outside those digits.
StateVector slice_factors(const StateVector& state, std::span<const int> factors,
                          std::span<const Index> digits);

double fidelity(const StateVector& a, const StateVector& b);
double fidelity(const StateVector& pure, const DensityMatrix& rho);
double von_neumann_entropy(const DensityMatrix& rho);

}  // namespace qcf

#endif  // QCF_CORE_OPS_HPP
