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

#include "qcf/lowerbound/library.hpp"

#include <cmath>
#include <stdexcept>

#include "qcf/core/ops.hpp"
#include "qcf/penalty/penalty.hpp"

namespace qcf::lowerbound {

namespace {

Matrix hadamard() {
  Matrix h(2, 2);
  const double s = 1.0 / std::sqrt(2.0);
  h << s, s, s, -s;
  return h;
}

Matrix pauli_x() {
  Matrix x(2, 2);
  x << 0, 1, 1, 0;
  return x;
}

Matrix cnot() {
  Matrix c = Matrix::Zero(4, 4);
  c(0, 0) = c(1, 1) = c(2, 3) = c(3, 2) = 1.0;
  return c;
}

Matrix swap(Index d) { return permutation_matrix(Layout{d, d}, std::vector<int>{1, 0}); }

Matrix ket_bra(Index dim, Index i) {
  Matrix m = Matrix::Zero(dim, dim);
  m(i, i) = 1.0;
  return m;
}

Matrix id(Index d) { return Matrix::Identity(d, d); }

std::array<Matrix, 2> bit_projectors() { return {ket_bra(2, 0), ket_bra(2, 1)}; }

// Householder reflection sending |0> to the real unit vector psi.
Matrix preparation(const Vector& psi) {
  Vector e = Vector::Zero(psi.size());
  e(0) = 1.0;
  Vector w = e - psi;
  if (w.norm() < 1e-15) return id(psi.size());
  return id(psi.size()) - 2.0 * (w * w.adjoint()) / w.squaredNorm();
}

}  // namespace

TwoPartyProtocol alice_announces() {
  TwoPartyProtocol p;
  p.name = "alice-announces";
  p.dim_a = p.dim_m = p.dim_b = 2;
  p.alice_unitaries = {cnot() * kron(hadamard(), id(2))};
  p.bob_unitaries = {cnot()};
  p.alice_projectors = p.bob_projectors = bit_projectors();
  return p;
}

TwoPartyProtocol sequential_xor() {
  TwoPartyProtocol p;
  p.name = "sequential-xor";
  p.dim_a = 2;
  p.dim_m = 2;
  p.dim_b = 4;  // a_copy (x) b
  const Layout mb{2, 2, 2};  // M, a_copy, b
  Matrix ub = embed(cnot(), mb, {2, 1}) * embed(cnot(), mb, {2, 0}) * embed(hadamard(), mb, {2}) *
              embed(cnot(), mb, {1, 0}) * embed(cnot(), mb, {0, 1});
  p.alice_unitaries = {cnot() * kron(hadamard(), id(2)), embed(cnot(), Layout{2, 2}, {1, 0})};
  p.bob_unitaries = {ub, id(8)};
  p.alice_projectors = bit_projectors();
  p.bob_projectors = {kron(ket_bra(2, 0), id(2)), kron(ket_bra(2, 1), id(2))};
  return p;
}

TwoPartyProtocol penalty_protocol(double v) {
  const penalty::PenaltyGame game(v);
  std::array<Vector, 2> psi{penalty::commit_state(0, game).amplitudes(), penalty::commit_state(1, game).amplitudes()};

  TwoPartyProtocol p;
  p.name = "penalty-v" + std::to_string(static_cast<long long>(std::lround(v)));
  if (std::abs(v - std::round(v)) > 1e-12) p.name = "penalty-v" + std::to_string(v);
  p.dim_a = 18;
  p.dim_m = 6;
  p.dim_b = 12;

  const Layout am{2, 3, 3, 3, 2};  // a_reg, A_q, A_s, M_q, M_bit
  const Layout mb{3, 2, 3, 2, 2};  // M_q, M_bit, B_q, b_reg, flag
  Matrix commit = kron(ket_bra(2, 0), preparation(psi[0])) + kron(ket_bra(2, 1), preparation(psi[1]));
  Matrix ua1 = embed(swap(3), am, {2, 3}) * embed(commit, am, {0, 1, 2}) * embed(hadamard(), am, {0});
  Matrix ub1 = embed(cnot(), mb, {3, 1}) * embed(hadamard(), mb, {3}) * embed(swap(3), mb, {0, 2});
  Matrix ua2 = embed(swap(3), am, {1, 3}) * embed(cnot(), am, {0, 4}) * embed(cnot(), am, {4, 0});
  Matrix check = Matrix::Zero(36, 36);  // on (M_bit, M_q, B_q, flag)
  for (int a = 0; a < 2; ++a) {
    Matrix pa = psi[a] * psi[a].adjoint();
    Matrix w = kron(pa, id(2)) + kron(id(9) - pa, pauli_x());
    check += kron(ket_bra(2, a), w);
  }
  Matrix ub2 = embed(cnot(), mb, {1, 3}) * embed(check, mb, {1, 0, 2, 4});

  p.alice_unitaries = {ua1, ua2};
  p.bob_unitaries = {ub1, ub2};
  for (int c = 0; c < 2; ++c) {
    p.alice_projectors[c] = kron(ket_bra(2, c), id(9));
    p.bob_projectors[c] = kron(kron(id(3), ket_bra(2, c)), ket_bra(2, 0));
  }
  return p;
}

KPartyProtocol party_announces() {
  KPartyProtocol p;
  p.name = "party-announces";
  p.party_dims = {2, 2, 2};
  p.dim_m = 2;
  p.turns = {0, 1, 2};
  p.unitaries = {cnot() * kron(hadamard(), id(2)), embed(cnot(), Layout{2, 2}, {1, 0}),
                 embed(cnot(), Layout{2, 2}, {1, 0})};
  p.projectors.assign(3, bit_projectors());
  return p;
}

KPartyProtocol round_robin_xor() {
  KPartyProtocol p;
  p.name = "round-robin-xor";
  p.party_dims = {4, 4, 4};  // coin (x) out
  p.dim_m = 2;
  const Layout l{2, 2, 2};  // coin, out, M
  Matrix flip = embed(cnot(), l, {0, 2}) * embed(hadamard(), l, {0});
  Matrix copy = embed(cnot(), l, {2, 1});
  p.turns = {0, 1, 2, 0, 1, 2};
  p.unitaries = {flip, flip, flip, copy, copy, copy};
  p.projectors.assign(3, {kron(id(2), ket_bra(2, 0)), kron(id(2), ket_bra(2, 1))});
  return p;
}

std::vector<std::string> two_party_names() { return {"alice-announces", "sequential-xor", "penalty-v4", "penalty-v16"}; }

std::vector<std::string> kparty_names() { return {"party-announces", "round-robin-xor"}; }

TwoPartyProtocol two_party_by_name(const std::string& name) {
  if (name == "alice-announces") return alice_announces();
  if (name == "sequential-xor") return sequential_xor();
  if (name == "penalty-v4") return penalty_protocol(4.0);
  if (name == "penalty-v16") return penalty_protocol(16.0);
  throw std::invalid_argument("unknown two-party protocol: " + name);
}

KPartyProtocol kparty_by_name(const std::string& name) {
  if (name == "party-announces") return party_announces();
  if (name == "round-robin-xor") return round_robin_xor();
  throw std::invalid_argument("unknown k-party protocol: " + name);
}

}  // namespace qcf::lowerbound
