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

#include <doctest.h>

#include <cmath>
#include <vector>

#include "qcf/core/json.hpp"
#include "qcf/core/ops.hpp"
#include "qcf/core/random.hpp"

using namespace qcf;

namespace {

StateVector commit(int a, double delta) {
  Vector v = Vector::Zero(9);
  v(a * 3 + a) = std::sqrt(delta);
  v(2 * 3 + 2) += std::sqrt(1.0 - delta);
  return StateVector(Layout{3, 3}, v);
}

Matrix hadamard() {
  Matrix h(2, 2);
  h << 1, 1, 1, -1;
  return h / std::sqrt(2.0);
}

Matrix cnot() {
  Matrix c = Matrix::Zero(4, 4);
  c(0, 0) = c(1, 1) = c(2, 3) = c(3, 2) = 1.0;
  return c;
}

}  // namespace

TEST_CASE("layout digits and strides") {
  Layout l{2, 3, 4};
  CHECK(l.total_dim() == 24);
  CHECK(l.stride(0) == 12);
  CHECK(l.stride(2) == 1);
  const std::vector<Index> d{1, 2, 3};
  CHECK(l.flat(d) == 23);
  CHECK(l.digits(23) == d);
  CHECK_THROWS_AS(Layout({2, 0}), std::invalid_argument);
  const std::vector<int> bad{0, 3};
  CHECK_THROWS_AS(l.select(bad), std::out_of_range);
}

TEST_CASE("state validation") {
  Vector v = Vector::Ones(2);
  CHECK_THROWS_AS(StateVector(Layout{2}, v), std::invalid_argument);
  CHECK_NOTHROW(StateVector(Layout{2}, v / 2.0, Normalization::sub));
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  CHECK_THROWS_AS(DensityMatrix(Layout{2}, m, Normalization::sub), std::invalid_argument);
  Matrix nh(2, 2);
  nh << 0, 1, 0, 0;
  CHECK_THROWS_AS(HermitianOperator(Layout{2}, nh), std::invalid_argument);
}

TEST_CASE("tensor of basis states and norm multiplicativity") {
  const auto s = tensor(StateVector::basis(Layout{2}, 0), StateVector::basis(Layout{2}, 0));
  CHECK(s.layout() == Layout({2, 2}));
  CHECK(std::abs(s.amplitude(0) - 1.0) < 1e-15);

  const auto t = tensor(commit(0, 0.5), commit(1, 0.5));
  CHECK(std::abs(t.norm() - 1.0) < 1e-12);
}

TEST_CASE("identity tensor M matches index arithmetic") {
  Matrix mb = Matrix::Zero(3, 3);
  mb.diagonal() << 5.0, 4.0, 4.5;
  const auto op = tensor(HermitianOperator::identity(Layout{3}), HermitianOperator(Layout{3}, mb));
  Matrix direct = Matrix::Zero(9, 9);
  for (int a = 0; a < 3; ++a) {
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) direct(a * 3 + i, a * 3 + j) = mb(i, j);
    }
  }
  CHECK((op.matrix() - direct).norm() < 1e-15);
}

TEST_CASE("partial trace examples") {
  for (double delta : {1.0, 0.5, 2.0 / 3.0}) {
    for (int a = 0; a < 2; ++a) {
      const auto rho = partial_trace(DensityMatrix::pure(commit(a, delta)), {1});
      Matrix expected = Matrix::Zero(3, 3);
      expected(a, a) = delta;
      expected(2, 2) = 1.0 - delta;
      CHECK((rho.matrix() - expected).norm() < 1e-14);
    }
  }
  Rng rng(11);
  const auto sigma = random_density(Layout{2}, rng);
  const auto tau = random_density(Layout{3}, rng);
  const auto prod = tensor(sigma, tau);
  CHECK((partial_trace(prod, {0}).matrix() - sigma.matrix()).norm() < 1e-14);
  CHECK((partial_trace(prod, {1}).matrix() - tau.matrix()).norm() < 1e-14);
  const std::vector<int> none;
  CHECK(std::abs(partial_trace(prod.matrix(), prod.layout(), none)(0, 0) - 1.0) < 1e-12);
  CHECK_THROWS_AS(partial_trace(prod, {2}), std::out_of_range);
}

TEST_CASE("partial trace preserves trace and positivity on random instances") {
  Rng rng(2026);
  for (int trial = 0; trial < 1000; ++trial) {
    const int factors = 1 + static_cast<int>(rng.index(3));
    std::vector<Index> dims;
    Index total = 1;
    for (int f = 0; f < factors; ++f) {
      const Index d = 1 + static_cast<Index>(rng.index(3));
      if (total * d > 12) break;
      dims.push_back(d);
      total *= d;
    }
    const Layout layout(dims);
    const auto rho = random_density(layout, rng, 1 + static_cast<Index>(rng.index(static_cast<std::size_t>(total))));
    std::vector<int> keep;
    for (int f = 0; f < static_cast<int>(dims.size()); ++f) {
      if (rng.bit()) keep.push_back(f);
    }
    if (keep.empty()) keep.push_back(0);
    const auto reduced = partial_trace(rho, keep);
    CHECK(std::abs(reduced.trace() - 1.0) < 1e-10);
    CHECK(is_psd(reduced.matrix(), 1e-10).psd);
  }
}

TEST_CASE("partial trace is monotone") {
  Rng rng(5);
  const Layout layout{2, 3};
  for (int trial = 0; trial < 50; ++trial) {
    const Matrix b = random_density(layout, rng).matrix();
    const Matrix gap = random_density(layout, rng).matrix();
    const std::vector<int> keep{1};
    const Matrix diff = partial_trace(Matrix(b + gap), layout, keep) - partial_trace(b, layout, keep);
    CHECK(is_psd(diff, 1e-12).psd);
  }
}

TEST_CASE("trace distance") {
  const double delta = 0.5;
  const auto r0 = partial_trace(DensityMatrix::pure(commit(0, delta)), {1});
  const auto r1 = partial_trace(DensityMatrix::pure(commit(1, delta)), {1});
  CHECK(trace_distance(r0, r1) == doctest::Approx(2 * delta).epsilon(1e-12));
  CHECK(trace_distance(r0, r0) < 1e-15);
  const auto z0 = DensityMatrix::pure(StateVector::basis(Layout{2}, 0));
  const auto z1 = DensityMatrix::pure(StateVector::basis(Layout{2}, 1));
  CHECK(trace_distance(z0, z1) == doctest::Approx(2.0));
  CHECK_THROWS_AS(trace_distance(z0, r0), std::invalid_argument);
}

TEST_CASE("trace distance triangle inequality and unitary invariance") {
  Rng rng(99);
  const Layout layout{2, 2};
  for (int trial = 0; trial < 200; ++trial) {
    const auto a = random_density(layout, rng);
    const auto b = random_density(layout, rng);
    const auto c = random_density(layout, rng);
    CHECK(trace_distance(a, c) <= trace_distance(a, b) + trace_distance(b, c) + 1e-12);
    CHECK(std::abs(trace_distance(a, b) - trace_distance(b, a)) < 1e-12);
    const Matrix u = random_unitary(4, rng);
    const DensityMatrix ua(layout, hermitian_part(u * a.matrix() * u.adjoint()));
    const DensityMatrix ub(layout, hermitian_part(u * b.matrix() * u.adjoint()));
    CHECK(std::abs(trace_distance(ua, ub) - trace_distance(a, b)) < 1e-10);
  }
}

TEST_CASE("helstrom at v=16 matches exhaustive search") {
  const double delta = 0.5;
  const auto r0 = partial_trace(DensityMatrix::pure(commit(0, delta)), {1});
  const auto r1 = partial_trace(DensityMatrix::pure(commit(1, delta)), {1});
  const auto h = helstrom(r0, r1);
  CHECK(h.success_probability == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(h.achieved_probability == doctest::Approx(0.75).epsilon(1e-12));

  // Both states are diagonal, so the optimal two-outcome POVM element is a
  // sum of basis projectors; random POVMs never beat it.
  double best = 0.0;
  for (int mask = 0; mask < 8; ++mask) {
    Matrix e = Matrix::Zero(3, 3);
    for (int i = 0; i < 3; ++i) {
      if (mask & (1 << i)) e(i, i) = 1.0;
    }
    const double p = 0.5 * (e * r0.matrix()).trace().real() +
                     0.5 * ((Matrix::Identity(3, 3) - e) * r1.matrix()).trace().real();
    best = std::max(best, p);
  }
  CHECK(best == doctest::Approx(0.75).epsilon(1e-15));
  Rng rng(3);
  for (int trial = 0; trial < 500; ++trial) {
    const Matrix u = random_unitary(3, rng);
    RealVector w(3);
    for (int i = 0; i < 3; ++i) w(i) = rng.uniform();
    const Matrix e = u * w.cast<Complex>().asDiagonal() * u.adjoint();
    const double p = 0.5 * (e * r0.matrix()).trace().real() +
                     0.5 * ((Matrix::Identity(3, 3) - e) * r1.matrix()).trace().real();
    CHECK(p <= 0.75 + 1e-12);
  }
}

TEST_CASE("helstrom trivial cases and formula on random pairs") {
  const auto z0 = DensityMatrix::pure(StateVector::basis(Layout{2}, 0));
  const auto z1 = DensityMatrix::pure(StateVector::basis(Layout{2}, 1));
  CHECK(helstrom(z0, z0).success_probability == doctest::Approx(0.5));
  CHECK(helstrom(z0, z1).success_probability == doctest::Approx(1.0));
  CHECK(helstrom(z0, z1).achieved_probability == doctest::Approx(1.0));
  Rng rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    const auto a = random_density(Layout{3}, rng);
    const auto b = random_density(Layout{3}, rng);
    const auto h = helstrom(a, b);
    CHECK(std::abs(h.success_probability - (0.5 + trace_distance(a, b) / 4.0)) < 1e-10);
    CHECK(std::abs(h.achieved_probability - h.success_probability) < 1e-10);
  }
}

TEST_CASE("unitaries") {
  const double s = 1.0 / std::sqrt(2.0);
  Vector plus(2);
  plus << s, s;
  Matrix z(2, 2);
  z << 1, 0, 0, -1;
  const auto out = apply_unitary(StateVector(Layout{2}, plus), z, {0});
  CHECK(std::abs(out.amplitude(1) + s) < 1e-15);
  CHECK_THROWS_AS(apply_unitary(StateVector(Layout{2}, plus), Matrix::Ones(2, 2), {0}), std::invalid_argument);
  CHECK_THROWS_AS(apply_unitary(StateVector(Layout{2}, plus), Matrix::Identity(4, 4), {0}),
                  std::invalid_argument);

  Rng rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const auto psi = random_state(Layout{2, 3, 2}, rng);
    const auto phi = apply_unitary(psi, random_unitary(6, rng), {2, 1});
    CHECK(std::abs(phi.norm() - 1.0) < 1e-12);
    const auto same = apply_unitary(psi, Matrix::Identity(3, 3), {1});
    CHECK((same.amplitudes() - psi.amplitudes()).norm() < 1e-15);
  }
}

TEST_CASE("cnot fan-out builds the GHZ-type state") {
  Rng rng(21);
  for (int k = 2; k <= 6; ++k) {
    const auto in = random_state(Layout{2}, rng);
    StateVector s = in;
    for (int i = 1; i < k; ++i) s = tensor(s, StateVector::basis(Layout{2}, 0));
    for (int i = 1; i < k; ++i) s = apply_unitary(s, cnot(), {0, i});
    const Index last = (Index{1} << k) - 1;
    CHECK(std::abs(s.amplitude(0) - in.amplitude(0)) < 1e-14);
    CHECK(std::abs(s.amplitude(last) - in.amplitude(1)) < 1e-14);
    CHECK(std::abs(std::norm(s.amplitude(0)) + std::norm(s.amplitude(last)) - 1.0) < 1e-12);
  }
}

TEST_CASE("embed and permutation agree with kron") {
  Rng rng(4);
  const Matrix a = random_unitary(2, rng);
  const Matrix b = random_unitary(3, rng);
  const Layout layout{2, 3};
  CHECK((embed(a, layout, {0}) - kron(a, Matrix::Identity(3, 3))).norm() < 1e-13);
  CHECK((embed(b, layout, {1}) - kron(Matrix::Identity(2, 2), b)).norm() < 1e-13);
  const std::vector<int> swap{1, 0};
  const Matrix p = permutation_matrix(layout, swap);
  CHECK((p * kron(a, b) * p.adjoint() - kron(b, a)).norm() < 1e-13);
  const auto psi = random_state(layout, rng);
  CHECK((permute_factors(psi, swap).amplitudes() - p * psi.amplitudes()).norm() < 1e-14);
}

TEST_CASE("measurement basics") {
  Rng rng(1);
  const auto zero = StateVector::basis(Layout{2, 2}, 0);
  const auto m = measure(zero, {1}, rng);
  CHECK(m.outcome == std::vector<Index>{0});
  CHECK(m.probability == doctest::Approx(1.0));

  Vector bell = Vector::Zero(4);
  bell(0) = bell(3) = 1.0 / std::sqrt(2.0);
  const StateVector epr(Layout{2, 2}, bell);
  int ones = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const auto r = measure(epr, {0}, rng);
    CHECK(r.probability == doctest::Approx(0.5));
    const Index b = r.outcome[0];
    ones += static_cast<int>(b);
    CHECK(std::norm(r.post_state.amplitude(b * 3)) == doctest::Approx(1.0));
  }
  CHECK(ones > 50);
  CHECK(ones < 150);
}

TEST_CASE("hadamard then measure on a GHZ leg follows the Born rule") {
  const int k = 4;
  Vector ghz = Vector::Zero(16);
  ghz(0) = ghz(15) = 1.0 / std::sqrt(2.0);
  const auto h = apply_unitary(StateVector(Layout::qubits(k), ghz), hadamard(), {2});
  const std::vector<int> leg{2};
  const double p1 = outcome_probabilities(h, leg)(1);
  CHECK(p1 == doctest::Approx(0.5).epsilon(1e-14));
  Rng rng(123);
  const int trials = 10000;
  int count = 0;
  for (int t = 0; t < trials; ++t) count += static_cast<int>(measure(h, leg, rng).outcome[0]);
  const double sigma = std::sqrt(p1 * (1 - p1) / trials);
  CHECK(std::abs(count / double(trials) - p1) < 3 * sigma);
}

TEST_CASE("Born frequencies over a random state stay within 4 sigma") {
  Rng rng(77);
  const auto psi = random_state(Layout{3, 2}, rng);
  const std::vector<int> f{0};
  const RealVector p = outcome_probabilities(psi, f);
  CHECK(p.sum() == doctest::Approx(1.0).epsilon(1e-12));
  const int trials = 20000;
  std::vector<int> counts(3, 0);
  for (int t = 0; t < trials; ++t) ++counts[static_cast<std::size_t>(measure(psi, f, rng).outcome[0])];
  for (int i = 0; i < 3; ++i) {
    const double sigma = std::sqrt(p(i) * (1 - p(i)) / trials);
    CHECK(std::abs(counts[static_cast<std::size_t>(i)] / double(trials) - p(i)) < 4 * sigma + 1e-12);
  }
}

TEST_CASE("measurement is deterministic given the seed") {
  Rng seed_rng(5);
  const auto psi = random_state(Layout{2, 2, 2}, seed_rng);
  Rng a(42), b(42);
  for (int t = 0; t < 50; ++t) {
    const std::vector<int> f{0, 2};
    CHECK(measure(psi, f, a).outcome == measure(psi, f, b).outcome);
  }
}

TEST_CASE("projector measurement") {
  const auto psi = commit(1, 0.5);
  const Matrix p = psi.projector();
  Rng rng(9);
  const std::vector<int> both{0, 1};
  const auto r = measure_projector(psi, p, both, rng);
  CHECK(r.accepted);
  CHECK(r.probability == doctest::Approx(1.0));
  const auto other = commit(0, 0.5);
  int accepted = 0;
  for (int t = 0; t < 4000; ++t) accepted += measure_projector(other, p, both, rng).accepted;
  CHECK(std::abs(accepted / 4000.0 - 0.25) < 4 * std::sqrt(0.25 * 0.75 / 4000));
}

TEST_CASE("psd checks") {
  const auto id = is_psd(HermitianOperator::identity(Layout{3}));
  CHECK(id.psd);
  CHECK(id.min_eigenvalue == doctest::Approx(1.0));
  Matrix d(2, 2);
  d << 1, 0, 0, -1;
  const auto r = is_psd(d);
  CHECK_FALSE(r.psd);
  CHECK(r.min_eigenvalue == doctest::Approx(-1.0));
  Matrix nh(2, 2);
  nh << 0, 1, 0, 0;
  CHECK_THROWS_AS(is_psd(nh), std::invalid_argument);
}

TEST_CASE("dual constraint for the honest commit at v=4 is PSD") {
  // m0 = 5, m1 = 4, m2 = 4.5 at v = 4; delta = 1 so psi_0 = |00>.
  Matrix m0 = Matrix::Zero(3, 3);
  m0.diagonal() << 5.0, 4.0, 4.5;
  const Matrix l0 = kron(Matrix::Identity(3, 3), m0);
  const Matrix lhs = l0 - 5.0 * commit(0, 1.0).projector();
  CHECK(is_psd(lhs).psd);
  CHECK(is_psd(lhs).min_eigenvalue == doctest::Approx(0.0));
}

TEST_CASE("slice, fidelity and entropy") {
  Vector bell = Vector::Zero(4);
  bell(0) = bell(3) = 1.0 / std::sqrt(2.0);
  const StateVector epr(Layout{2, 2}, bell);
  const std::vector<int> f{0};
  const std::vector<Index> d{1};
  const auto s = slice_factors(epr, f, d);
  CHECK(s.layout() == Layout({2}));
  CHECK(s.norm() == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(fidelity(epr, epr) == doctest::Approx(1.0));
  CHECK(fidelity(epr, DensityMatrix::pure(epr)) == doctest::Approx(1.0));
  CHECK(von_neumann_entropy(partial_trace(DensityMatrix::pure(epr), {0})) == doctest::Approx(1.0));
  CHECK(von_neumann_entropy(DensityMatrix::pure(epr)) == doctest::Approx(0.0));
}

TEST_CASE("matrix json round trip and errors") {
  Rng rng(6);
  const Matrix m = random_ginibre(2, 3, rng);
  const Matrix back = matrix_from_json(matrix_to_json(m));
  CHECK((back - m).norm() == 0.0);
  Json bad = matrix_to_json(m);
  bad.erase("cols");
  CHECK_THROWS_WITH_AS(matrix_from_json(bad, "U"), "U.cols: missing", JsonFormatError);
  bad = matrix_to_json(m);
  bad["data"].erase(0);
  CHECK_THROWS_AS(matrix_from_json(bad), JsonFormatError);
}

TEST_CASE("sparse matrix json") {
  Matrix m = Matrix::Zero(4, 3);
  m(0, 2) = Complex(0.5, -1.0);
  m(3, 1) = 2.0;
  const Json j = sparse_matrix_to_json(m);
  CHECK(j["entries"].size() == 2);
  CHECK(matrix_from_json(j) == m);
  Json bad = j;
  bad["entries"][0][0] = 4;
  CHECK_THROWS_WITH_AS(matrix_from_json(bad, "P"), "P.entries[0]: index out of range", JsonFormatError);
  bad["entries"][0] = {1, 2};
  CHECK_THROWS_AS(matrix_from_json(bad, "P"), JsonFormatError);
}
