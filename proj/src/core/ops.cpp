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

#include "qcf/core/ops.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qcf {

namespace {

// offsets[c] is the flat-index contribution of the c-th joint basis state of
// `factors`, enumerated with factors[0] most significant.
std::vector<Index> factor_offsets(const Layout& layout, std::span<const int> factors) {
  Index count = 1;
  for (int f : factors) count *= layout.dim(static_cast<std::size_t>(f));
  std::vector<Index> strides(factors.size());
  for (std::size_t i = 0; i < factors.size(); ++i) strides[i] = layout.stride(static_cast<std::size_t>(factors[i]));
  std::vector<Index> out(static_cast<std::size_t>(count));
  for (Index c = 0; c < count; ++c) {
    Index rem = c;
    Index off = 0;
    for (std::size_t i = factors.size(); i-- > 0;) {
      const Index d = layout.dim(static_cast<std::size_t>(factors[i]));
      off += (rem % d) * strides[i];
      rem /= d;
    }
    out[static_cast<std::size_t>(c)] = off;
  }
  return out;
}

void require_same_layout(const Layout& a, const Layout& b, const char* what) {
  if (!(a == b)) {
    throw std::invalid_argument(std::string(what) + ": layout mismatch " + a.to_string() + " vs " +
                                b.to_string());
  }
}

Eigen::SelfAdjointEigenSolver<Matrix> eigen_of(const Matrix& h) {
  return Eigen::SelfAdjointEigenSolver<Matrix>(hermitian_part(h));
}

}  // namespace

StateVector tensor(const StateVector& a, const StateVector& b) {
  Vector v = kron(a.amplitudes(), b.amplitudes());
  const bool unit = a.normalization() == Normalization::unit && b.normalization() == Normalization::unit;
  return StateVector(a.layout().concat(b.layout()), std::move(v), unit ? Normalization::unit : Normalization::sub);
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  const bool unit = a.normalization() == Normalization::unit && b.normalization() == Normalization::unit;
  return DensityMatrix(a.layout().concat(b.layout()), kron(a.matrix(), b.matrix()),
                       unit ? Normalization::unit : Normalization::sub);
}

HermitianOperator tensor(const HermitianOperator& a, const HermitianOperator& b) {
  return HermitianOperator(a.layout().concat(b.layout()), kron(a.matrix(), b.matrix()));
}

Matrix partial_trace(const Matrix& m, const Layout& layout, std::span<const int> keep) {
  if (m.rows() != layout.total_dim() || m.cols() != layout.total_dim()) {
    throw std::invalid_argument("partial_trace: matrix shape does not match layout " + layout.to_string());
  }
  std::vector<int> kept(keep.begin(), keep.end());
  check_factor_subset(layout, kept);
  std::sort(kept.begin(), kept.end());
  const std::vector<int> traced = layout.complement(kept);
  const auto ok = factor_offsets(layout, kept);
  const auto ot = factor_offsets(layout, traced);
  const Index dk = static_cast<Index>(ok.size());
  Matrix out = Matrix::Zero(dk, dk);
  for (Index i = 0; i < dk; ++i) {
    for (Index j = 0; j < dk; ++j) {
      Complex s = 0.0;
      for (Index t : ot) s += m(ok[static_cast<std::size_t>(i)] + t, ok[static_cast<std::size_t>(j)] + t);
      out(i, j) = s;
    }
  }
  return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep) {
  if (keep.empty()) throw std::invalid_argument("partial_trace: keep must be non-empty");
  std::vector<int> kept(keep.begin(), keep.end());
  check_factor_subset(rho.layout(), kept);
  std::sort(kept.begin(), kept.end());
  Matrix r = partial_trace(rho.matrix(), rho.layout(), kept);
  return DensityMatrix(rho.layout().select(kept), hermitian_part(r), rho.normalization());
}

Matrix permutation_matrix(const Layout& layout, std::span<const int> order) {
  if (order.size() != layout.factors()) {
    throw std::invalid_argument("permutation_matrix: order must list every factor");
  }
  check_factor_subset(layout, order);
  const auto offs = factor_offsets(layout, order);
  const Index d = layout.total_dim();
  Matrix p = Matrix::Zero(d, d);
  for (Index n = 0; n < d; ++n) p(n, offs[static_cast<std::size_t>(n)]) = 1.0;
  return p;
}

StateVector permute_factors(const StateVector& state, std::span<const int> order) {
  if (order.size() != state.layout().factors()) {
    throw std::invalid_argument("permute_factors: order must list every factor");
  }
  check_factor_subset(state.layout(), order);
  const auto offs = factor_offsets(state.layout(), order);
  Vector v(state.dim());
  for (Index n = 0; n < state.dim(); ++n) v(n) = state.amplitude(offs[static_cast<std::size_t>(n)]);
  return StateVector(state.layout().select(order), std::move(v), state.normalization());
}

Matrix apply_on_factors(const Matrix& columns, const Layout& layout, const Matrix& op,
                        std::span<const int> factors) {
  check_factor_subset(layout, factors);
  if (columns.rows() != layout.total_dim()) {
    throw std::invalid_argument("apply_on_factors: row count does not match layout " + layout.to_string());
  }
  const auto sel = factor_offsets(layout, factors);
  const Index ds = static_cast<Index>(sel.size());
  if (op.rows() != ds || op.cols() != ds) {
    throw std::invalid_argument("apply_on_factors: operator is " + std::to_string(op.rows()) + "x" +
                                std::to_string(op.cols()) + ", selected factors have dimension " +
                                std::to_string(ds));
  }
  const auto rest = factor_offsets(layout, layout.complement(factors));
  Matrix out(columns.rows(), columns.cols());
  Matrix gathered(ds, columns.cols());
  for (Index r : rest) {
    for (Index s = 0; s < ds; ++s) gathered.row(s) = columns.row(sel[static_cast<std::size_t>(s)] + r);
    const Matrix mapped = op * gathered;
    for (Index s = 0; s < ds; ++s) out.row(sel[static_cast<std::size_t>(s)] + r) = mapped.row(s);
  }
  return out;
}

Matrix embed(const Matrix& op, const Layout& layout, std::span<const int> factors) {
  const Index d = layout.total_dim();
  return apply_on_factors(Matrix::Identity(d, d), layout, op, factors);
}

StateVector apply_unitary(const StateVector& state, const Matrix& u, std::span<const int> factors) {
  if (!is_unitary(u)) throw std::invalid_argument("apply_unitary: operator is not unitary");
  Matrix v = apply_on_factors(state.amplitudes(), state.layout(), u, factors);
  return StateVector(state.layout(), v.col(0), state.normalization());
}

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_same_layout(rho.layout(), sigma.layout(), "trace_distance");
  return eigen_of(rho.matrix() - sigma.matrix()).eigenvalues().cwiseAbs().sum();
}

HelstromResult helstrom(const DensityMatrix& rho0, const DensityMatrix& rho1) {
  require_same_layout(rho0.layout(), rho1.layout(), "helstrom");
  const auto es = eigen_of(rho0.matrix() - rho1.matrix());
  const Index d = rho0.dim();
  HelstromResult out;
  out.projector0 = Matrix::Zero(d, d);
  for (Index i = 0; i < d; ++i) {
    if (es.eigenvalues()(i) >= 0.0) {
      out.projector0 += es.eigenvectors().col(i) * es.eigenvectors().col(i).adjoint();
    }
  }
  out.projector1 = Matrix::Identity(d, d) - out.projector0;
  out.success_probability = 0.5 + es.eigenvalues().cwiseAbs().sum() / 4.0;
  out.achieved_probability = 0.5 * (out.projector0 * rho0.matrix()).trace().real() +
                             0.5 * (out.projector1 * rho1.matrix()).trace().real();
  return out;
}

double min_eigenvalue(const Matrix& hermitian) {
  if (hermitian.size() == 0) return 0.0;
  return Eigen::SelfAdjointEigenSolver<Matrix>(hermitian_part(hermitian), Eigen::EigenvaluesOnly)
      .eigenvalues()(0);
}

PsdReport is_psd(const Matrix& h, double tol) {
  if (!is_hermitian(h, 1e-10)) throw std::invalid_argument("is_psd: input is not Hermitian");
  PsdReport r;
  r.min_eigenvalue = min_eigenvalue(h);
  r.psd = r.min_eigenvalue >= -tol;
  return r;
}

PsdReport is_psd(const HermitianOperator& h, double tol) { return is_psd(h.matrix(), tol); }

RealVector outcome_probabilities(const StateVector& state, std::span<const int> factors) {
  check_factor_subset(state.layout(), factors);
  const auto sel = factor_offsets(state.layout(), factors);
  const auto rest = factor_offsets(state.layout(), state.layout().complement(factors));
  RealVector p = RealVector::Zero(static_cast<Index>(sel.size()));
  for (std::size_t s = 0; s < sel.size(); ++s) {
    for (Index r : rest) p(static_cast<Index>(s)) += std::norm(state.amplitude(sel[s] + r));
  }
  return p;
}

MeasurementResult measure(const StateVector& state, std::span<const int> factors, Rng& rng) {
  const RealVector p = outcome_probabilities(state, factors);
  const double total = p.sum();
  double u = rng.uniform() * total;
  Index pick = p.size() - 1;
  for (Index s = 0; s < p.size(); ++s) {
    if (p(s) <= 0.0) continue;
    if (u < p(s)) {
      pick = s;
      break;
    }
    u -= p(s);
  }
  while (p(pick) <= 0.0 && pick > 0) --pick;

  const auto sel = factor_offsets(state.layout(), factors);
  const auto rest = factor_offsets(state.layout(), state.layout().complement(factors));
  Vector v = Vector::Zero(state.dim());
  for (Index r : rest) {
    const Index idx = sel[static_cast<std::size_t>(pick)] + r;
    v(idx) = state.amplitude(idx);
  }
  v /= std::sqrt(p(pick));
  MeasurementResult out{state.layout().select(factors).digits(pick), p(pick) / total,
                        StateVector(state.layout(), v.normalized())};
  return out;
}

ProjectiveResult measure_projector(const StateVector& state, const Matrix& projector,
                                   std::span<const int> factors, Rng& rng) {
  const Vector inside = apply_on_factors(state.amplitudes(), state.layout(), projector, factors).col(0);
  const double p_in = inside.squaredNorm() / state.amplitudes().squaredNorm();
  const bool accepted = rng.uniform() < p_in;
  Vector post = accepted ? inside : Vector(state.amplitudes() - inside);
  return ProjectiveResult{accepted, accepted ? p_in : 1.0 - p_in,
                          StateVector(state.layout(), post.normalized())};
}

StateVector slice_factors(const StateVector& state, std::span<const int> factors,
                          std::span<const Index> digits) {
  check_factor_subset(state.layout(), factors);
  if (digits.size() != factors.size()) throw std::invalid_argument("slice_factors: digit count mismatch");
  Index base = 0;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    const auto f = static_cast<std::size_t>(factors[i]);
    if (digits[i] < 0 || digits[i] >= state.layout().dim(f)) throw std::out_of_range("slice_factors: digit");
    base += digits[i] * state.layout().stride(f);
  }
  const auto keep = state.layout().complement(factors);
  const auto rest = factor_offsets(state.layout(), keep);
  Vector v(static_cast<Index>(rest.size()));
  for (std::size_t r = 0; r < rest.size(); ++r) v(static_cast<Index>(r)) = state.amplitude(base + rest[r]);
  return StateVector(state.layout().select(keep), std::move(v), Normalization::sub);
}

double fidelity(const StateVector& a, const StateVector& b) {
  require_same_layout(a.layout(), b.layout(), "fidelity");
  return std::norm(a.amplitudes().dot(b.amplitudes()));
}

double fidelity(const StateVector& pure, const DensityMatrix& rho) {
  require_same_layout(pure.layout(), rho.layout(), "fidelity");
  return (pure.amplitudes().adjoint() * rho.matrix() * pure.amplitudes())(0, 0).real();
}

double von_neumann_entropy(const DensityMatrix& rho) {
  const auto es = Eigen::SelfAdjointEigenSolver<Matrix>(rho.matrix(), Eigen::EigenvaluesOnly);
  double s = 0.0;
  for (Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double l = es.eigenvalues()(i);
    if (l > 1e-15) s -= l * std::log2(l);
  }
  return s;
}

}  // namespace qcf
