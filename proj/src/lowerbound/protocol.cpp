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

#include "qcf/lowerbound/protocol.hpp"

#include <algorithm>
#include <stdexcept>

#include "qcf/core/ops.hpp"

namespace qcf::lowerbound {

namespace {

void require_square(const Matrix& m, Index dim, const std::string& what) {
  if (m.rows() != dim || m.cols() != dim) {
    throw std::invalid_argument(what + ": expected " + std::to_string(dim) + "x" + std::to_string(dim) + ", got " +
                                std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
}

double unitarity_error(const Matrix& u) {
  return (u.adjoint() * u - Matrix::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff();
}

// Hermitian, idempotent, and mutually orthogonal.
double projector_pair_error(const std::array<Matrix, 2>& pi) {
  double e = 0.0;
  for (const Matrix& p : pi) {
    e = std::max(e, hermiticity_error(p));
    e = std::max(e, (p * p - p).cwiseAbs().maxCoeff());
  }
  return std::max(e, (pi[0] * pi[1]).cwiseAbs().maxCoeff());
}

Vector basis_zero(Index dim) {
  Vector v = Vector::Zero(dim);
  v(0) = 1.0;
  return v;
}

Vector evolve(const TwoPartyProtocol& p, int j) {
  const Layout l = p.layout();
  const std::vector<int> am{0, 1};
  const std::vector<int> mb{1, 2};
  Vector v = basis_zero(l.total_dim());
  for (int r = 0; r < j; ++r) {
    v = apply_on_factors(v, l, p.alice_unitaries[static_cast<std::size_t>(r)], am).col(0);
    v = apply_on_factors(v, l, p.bob_unitaries[static_cast<std::size_t>(r)], mb).col(0);
  }
  return v;
}

Vector evolve(const KPartyProtocol& p, int j) {
  const Layout l = p.layout();
  Vector v = basis_zero(l.total_dim());
  for (int r = 0; r < j; ++r) {
    const std::vector<int> f{p.turns[static_cast<std::size_t>(r)], p.parties()};
    v = apply_on_factors(v, l, p.unitaries[static_cast<std::size_t>(r)], f).col(0);
  }
  return v;
}

StateVector as_state(const Layout& l, const Vector& v) {
  if (std::abs(v.norm() - 1.0) > 1e-9) throw std::invalid_argument("protocol evolution is not norm preserving");
  return StateVector(l, v / v.norm());
}

Condition make(const std::string& name, double residual, double tol) { return {name, residual, residual <= tol}; }

void finish(ValidationReport& r) {
  r.valid = std::all_of(r.conditions.begin(), r.conditions.end(), [](const Condition& c) { return c.holds; });
  r.p_abort = std::max(0.0, 1.0 - r.p0 - r.p1);
}

}  // namespace

void TwoPartyProtocol::check_shapes() const {
  if (dim_a < 1 || dim_m < 1 || dim_b < 1) throw std::invalid_argument("dimensions must be positive");
  if (alice_unitaries.empty()) throw std::invalid_argument("protocol needs at least one round");
  if (alice_unitaries.size() != bob_unitaries.size()) {
    throw std::invalid_argument("Alice and Bob need the same number of unitaries");
  }
  for (std::size_t j = 0; j < alice_unitaries.size(); ++j) {
    require_square(alice_unitaries[j], dim_a * dim_m, "U_A[" + std::to_string(j + 1) + "]");
    require_square(bob_unitaries[j], dim_m * dim_b, "U_B[" + std::to_string(j + 1) + "]");
  }
  for (int c = 0; c < 2; ++c) {
    require_square(alice_projectors[c], dim_a, "Pi_A," + std::to_string(c));
    require_square(bob_projectors[c], dim_b, "Pi_B," + std::to_string(c));
  }
}

Layout KPartyProtocol::layout() const {
  std::vector<Index> dims = party_dims;
  dims.push_back(dim_m);
  return Layout(dims);
}

void KPartyProtocol::check_shapes() const {
  if (party_dims.empty()) throw std::invalid_argument("protocol needs at least one party");
  if (dim_m < 1) throw std::invalid_argument("dimensions must be positive");
  for (Index d : party_dims) {
    if (d < 1) throw std::invalid_argument("dimensions must be positive");
  }
  if (turns.empty()) throw std::invalid_argument("protocol needs at least one round");
  if (turns.size() != unitaries.size()) throw std::invalid_argument("one unitary per turn required");
  if (projectors.size() != party_dims.size()) throw std::invalid_argument("one projector pair per party required");
  for (std::size_t j = 0; j < turns.size(); ++j) {
    int t = turns[j];
    if (t < 0 || t >= parties()) throw std::invalid_argument("turn " + std::to_string(j + 1) + " names no party");
    require_square(unitaries[j], party_dims[static_cast<std::size_t>(t)] * dim_m, "U[" + std::to_string(j + 1) + "]");
  }
  for (std::size_t i = 0; i < projectors.size(); ++i) {
    for (int c = 0; c < 2; ++c) {
      require_square(projectors[i][c], party_dims[i], "Pi_" + std::to_string(i) + "," + std::to_string(c));
    }
  }
}

const Condition& ValidationReport::condition(const std::string& name) const {
  for (const Condition& c : conditions) {
    if (c.name == name) return c;
  }
  throw std::out_of_range("no condition named " + name);
}

StateVector honest_state(const TwoPartyProtocol& p, int j) {
  p.check_shapes();
  if (j < 0 || j > p.rounds()) throw std::out_of_range("round outside [0, N]");
  return as_state(p.layout(), evolve(p, j));
}

StateVector honest_state(const KPartyProtocol& p, int j) {
  p.check_shapes();
  if (j < 0 || j > p.rounds()) throw std::out_of_range("round outside [0, N]");
  return as_state(p.layout(), evolve(p, j));
}

ValidationReport validate_protocol(const TwoPartyProtocol& p, double tol) {
  p.check_shapes();
  ValidationReport r;
  for (int j = 0; j < p.rounds(); ++j) {
    const auto s = std::to_string(j + 1);
    r.conditions.push_back(make("U_A[" + s + "] unitary", unitarity_error(p.alice_unitaries[j]), tolerance::unitary));
    r.conditions.push_back(make("U_B[" + s + "] unitary", unitarity_error(p.bob_unitaries[j]), tolerance::unitary));
  }
  r.conditions.push_back(make("Pi_A projectors", projector_pair_error(p.alice_projectors), tol));
  r.conditions.push_back(make("Pi_B projectors", projector_pair_error(p.bob_projectors), tol));

  const Layout l = p.layout();
  const Vector psi = evolve(p, p.rounds());
  std::array<Vector, 2> alice_side;
  for (int b = 0; b < 2; ++b) {
    alice_side[b] = apply_on_factors(psi, l, p.alice_projectors[b], std::vector<int>{0}).col(0);
    Vector bob_side = apply_on_factors(psi, l, p.bob_projectors[b], std::vector<int>{2}).col(0);
    r.conditions.push_back(make("agreement b=" + std::to_string(b), (alice_side[b] - bob_side).norm(), tol));
  }
  r.conditions.push_back(make("balance", std::abs(alice_side[0].norm() - alice_side[1].norm()), tol));
  r.p0 = alice_side[0].squaredNorm();
  r.p1 = alice_side[1].squaredNorm();
  if (std::abs(psi.norm() - 1.0) <= 1e-9) r.final_state = StateVector(l, psi / psi.norm());
  finish(r);
  return r;
}

ValidationReport validate_protocol(const KPartyProtocol& p, double tol) {
  p.check_shapes();
  ValidationReport r;
  for (int j = 0; j < p.rounds(); ++j) {
    r.conditions.push_back(
        make("U[" + std::to_string(j + 1) + "] unitary", unitarity_error(p.unitaries[j]), tolerance::unitary));
  }
  for (int i = 0; i < p.parties(); ++i) {
    r.conditions.push_back(make("Pi_" + std::to_string(i) + " projectors", projector_pair_error(p.projectors[i]), tol));
  }
  const Layout l = p.layout();
  const Vector psi = evolve(p, p.rounds());
  std::vector<std::array<Vector, 2>> proj(static_cast<std::size_t>(p.parties()));
  for (int i = 0; i < p.parties(); ++i) {
    for (int b = 0; b < 2; ++b) proj[i][b] = apply_on_factors(psi, l, p.projectors[i][b], std::vector<int>{i}).col(0);
  }
  for (int i = 0; i < p.parties(); ++i) {
    for (int i2 = i + 1; i2 < p.parties(); ++i2) {
      for (int b = 0; b < 2; ++b) {
        r.conditions.push_back(make("agreement " + std::to_string(i) + "," + std::to_string(i2) + " b=" + std::to_string(b),
                                    (proj[i][b] - proj[i2][b]).norm(), tol));
      }
    }
    r.conditions.push_back(
        make("balance party " + std::to_string(i), std::abs(proj[i][0].norm() - proj[i][1].norm()), tol));
  }
  r.p0 = proj[0][0].squaredNorm();
  r.p1 = proj[0][1].squaredNorm();
  if (std::abs(psi.norm() - 1.0) <= 1e-9) r.final_state = StateVector(l, psi / psi.norm());
  finish(r);
  return r;
}

std::vector<int> merged_factor_order(const KPartyProtocol& p, int honest) {
  if (honest < 0 || honest >= p.parties()) throw std::out_of_range("honest party outside [0, k)");
  std::vector<int> order{honest, p.parties()};
  for (int i = 0; i < p.parties(); ++i) {
    if (i != honest) order.push_back(i);
  }
  return order;
}

TwoPartyProtocol merge_cheaters(const KPartyProtocol& p, int honest) {
  p.check_shapes();
  const std::vector<int> order = merged_factor_order(p, honest);

  // Bob's side: M first, then the other parties in increasing order.
  std::vector<Index> bob_dims{p.dim_m};
  std::vector<int> position(static_cast<std::size_t>(p.parties()), -1);
  for (std::size_t n = 2; n < order.size(); ++n) {
    position[static_cast<std::size_t>(order[n])] = static_cast<int>(bob_dims.size());
    bob_dims.push_back(p.party_dims[static_cast<std::size_t>(order[n])]);
  }
  const Layout bob_layout(bob_dims);

  TwoPartyProtocol out;
  out.name = p.name + " (honest " + std::to_string(honest) + ")";
  out.dim_a = p.party_dims[static_cast<std::size_t>(honest)];
  out.dim_m = p.dim_m;
  out.dim_b = bob_layout.total_dim() / p.dim_m;

  // Fuse runs of same-side turns, then pad so Alice and Bob alternate.
  struct Segment {
    bool alice;
    Matrix u;
  };
  std::vector<Segment> segments;
  for (int j = 0; j < p.rounds(); ++j) {
    const int t = p.turns[static_cast<std::size_t>(j)];
    const bool alice = t == honest;
    Matrix u = alice ? p.unitaries[static_cast<std::size_t>(j)]
                     : embed(p.unitaries[static_cast<std::size_t>(j)], bob_layout,
                             {position[static_cast<std::size_t>(t)], 0});
    if (!segments.empty() && segments.back().alice == alice) {
      segments.back().u = u * segments.back().u;
    } else {
      segments.push_back({alice, std::move(u)});
    }
  }
  const Matrix id_am = Matrix::Identity(out.dim_a * out.dim_m, out.dim_a * out.dim_m);
  const Matrix id_mb = Matrix::Identity(out.dim_m * out.dim_b, out.dim_m * out.dim_b);
  bool expect_alice = true;
  for (Segment& s : segments) {
    if (s.alice != expect_alice) {
      if (expect_alice) {
        out.alice_unitaries.push_back(id_am);
      } else {
        out.bob_unitaries.push_back(id_mb);
      }
    }
    if (s.alice) {
      out.alice_unitaries.push_back(std::move(s.u));
    } else {
      out.bob_unitaries.push_back(std::move(s.u));
    }
    expect_alice = !s.alice;
  }
  if (!expect_alice) out.bob_unitaries.push_back(id_mb);

  for (int b = 0; b < 2; ++b) {
    out.alice_projectors[b] = p.projectors[static_cast<std::size_t>(honest)][b];
    Matrix pb = Matrix::Identity(1, 1);
    for (std::size_t n = 2; n < order.size(); ++n) {
      pb = kron(pb, p.projectors[static_cast<std::size_t>(order[n])][b]);
    }
    out.bob_projectors[b] = pb;
  }
  return out;
}

}  // namespace qcf::lowerbound
