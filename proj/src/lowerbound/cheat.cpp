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

#include "qcf/lowerbound/cheat.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qcf/core/ops.hpp"

namespace qcf::lowerbound {

namespace {

std::string step_name(std::size_t j) { return "step_" + std::to_string(j); }
std::string block_name(std::size_t j) { return "rho_" + std::to_string(j); }

// Z_j (x) 1 - U^H (Z_{j+1} (x) 1) U
Matrix step_slack(const Matrix& zj, const Matrix& znext, const Matrix& u, Index dim_m) {
  const Matrix id = Matrix::Identity(dim_m, dim_m);
  Matrix s = kron(zj, id) - u.adjoint() * kron(znext, id) * u;
  return hermitian_part(s);
}

void check_inputs(Index dim_h, Index dim_m, const std::vector<Matrix>& unitaries, const Matrix& projector) {
  if (dim_h < 1 || dim_m < 1) throw std::invalid_argument("dimensions must be positive");
  if (unitaries.empty()) throw std::invalid_argument("need at least one round");
  for (const Matrix& u : unitaries) {
    if (u.rows() != dim_h * dim_m || u.cols() != dim_h * dim_m) throw std::invalid_argument("unitary has wrong shape");
  }
  if (projector.rows() != dim_h || projector.cols() != dim_h) throw std::invalid_argument("projector has wrong shape");
}

}  // namespace

std::string to_string(Side s) { return s == Side::alice ? "alice" : "bob"; }

Side side_from_string(const std::string& s) {
  if (s == "alice") return Side::alice;
  if (s == "bob") return Side::bob;
  throw std::invalid_argument("side must be alice or bob, got " + s);
}

sdp::Problem cheat_sdp(Index dim_h, Index dim_m, const std::vector<Matrix>& unitaries, const Matrix& projector) {
  check_inputs(dim_h, dim_m, unitaries, projector);
  const Layout hm{dim_h, dim_m};
  const std::size_t n = unitaries.size();
  sdp::Problem prob;
  for (std::size_t j = 0; j <= n; ++j) prob.add_block(block_name(j), hm);
  prob.set_objective(block_name(n), kron(projector, Matrix::Identity(dim_m, dim_m)));

  Matrix zero_state = Matrix::Zero(dim_h, dim_h);
  zero_state(0, 0) = 1.0;
  prob.add_constraint("base", zero_state);
  prob.add_trace_term("base", block_name(0), 1.0, {0});
  for (std::size_t j = 1; j <= n; ++j) {
    prob.add_constraint(step_name(j), Matrix::Zero(dim_h, dim_h));
    prob.add_trace_term(step_name(j), block_name(j), 1.0, {0});
    prob.add_sandwich_term(step_name(j), block_name(j - 1), -1.0, unitaries[j - 1], hm, {0});
  }
  return prob;
}

std::vector<Matrix> honest_unitaries(const TwoPartyProtocol& p, Side honest) {
  p.check_shapes();
  if (honest == Side::alice) return p.alice_unitaries;
  const Matrix swap = permutation_matrix(Layout{p.dim_m, p.dim_b}, std::vector<int>{1, 0});
  std::vector<Matrix> out;
  for (const Matrix& u : p.bob_unitaries) out.push_back(swap * u * swap.adjoint());
  return out;
}

std::vector<Matrix> reachable_supports(Index dim_h, Index dim_m, const std::vector<Matrix>& unitaries, double tol) {
  check_inputs(dim_h, dim_m, unitaries, Matrix::Identity(dim_h, dim_h));
  const Layout hm{dim_h, dim_m};
  std::vector<Matrix> out;
  Matrix v = Matrix::Zero(dim_h, 1);
  v(0, 0) = 1.0;
  out.push_back(v);
  for (const Matrix& u : unitaries) {
    const Matrix vm = kron(v, Matrix::Identity(dim_m, dim_m));
    const Matrix image = u * vm;
    const Matrix t = hermitian_part(partial_trace(image * image.adjoint(), hm, std::vector<int>{0}));
    Eigen::SelfAdjointEigenSolver<Matrix> es(t);
    const double cut = tol * std::max(1.0, es.eigenvalues().maxCoeff());
    std::vector<Index> keep;
    for (Index i = 0; i < dim_h; ++i) {
      if (es.eigenvalues()(i) > cut) keep.push_back(i);
    }
    v = Matrix(dim_h, static_cast<Index>(keep.size()));
    for (std::size_t c = 0; c < keep.size(); ++c) v.col(static_cast<Index>(c)) = es.eigenvectors().col(keep[c]);
    out.push_back(v);
  }
  return out;
}

sdp::Problem reduced_cheat_sdp(Index dim_h, Index dim_m, const std::vector<Matrix>& unitaries, const Matrix& projector,
                               const std::vector<Matrix>& supports) {
  check_inputs(dim_h, dim_m, unitaries, projector);
  const std::size_t n = unitaries.size();
  if (supports.size() != n + 1) throw std::invalid_argument("need one support per block");
  const Matrix id_m = Matrix::Identity(dim_m, dim_m);
  sdp::Problem prob;
  for (std::size_t j = 0; j <= n; ++j) prob.add_block(block_name(j), Layout{supports[j].cols(), dim_m});
  prob.set_objective(block_name(n), kron(supports[n].adjoint() * projector * supports[n], id_m));
  prob.add_constraint("base", Matrix::Identity(1, 1));
  prob.add_trace_term("base", block_name(0), 1.0, {});
  for (std::size_t j = 1; j <= n; ++j) {
    const Index r = supports[j].cols();
    prob.add_constraint(step_name(j), Matrix::Zero(r, r));
    prob.add_trace_term(step_name(j), block_name(j), 1.0, {0});
    Matrix s = kron(supports[j], id_m).adjoint() * unitaries[j - 1] * kron(supports[j - 1], id_m);
    prob.add_sandwich_term(step_name(j), block_name(j - 1), -1.0, s, Layout{r, dim_m}, {0});
  }
  return prob;
}

ZChain refine_certificate(Index dim_h, Index dim_m, const std::vector<Matrix>& unitaries, const Matrix& projector,
                          const std::vector<Matrix>& supports, const sdp::DualCertificate& cert, double margin) {
  check_inputs(dim_h, dim_m, unitaries, projector);
  const std::size_t n = unitaries.size();
  std::vector<Matrix> v = supports;
  if (v.empty()) v.assign(n + 1, Matrix::Identity(dim_h, dim_h));
  if (v.size() != n + 1) throw std::invalid_argument("need one support per block");
  const Matrix id_m = Matrix::Identity(dim_m, dim_m);

  auto raw = [&](std::size_t j) -> Matrix {
    const std::string name = j == 0 ? "base" : step_name(j);
    auto it = cert.multipliers.find(name);
    if (it == cert.multipliers.end()) throw std::invalid_argument("certificate lacks multiplier " + name);
    Matrix y = it->second;
    // a full-space multiplier is compressed onto the support
    if (y.rows() == dim_h && y.cols() == dim_h && v[j].cols() != dim_h) y = v[j].adjoint() * y * v[j];
    if (y.rows() != v[j].cols() || y.cols() != v[j].cols()) {
      throw std::invalid_argument("multiplier " + name + " has wrong shape");
    }
    return hermitian_part(y);
  };

  ZChain chain;
  chain.z.resize(n + 1);
  chain.shifts.assign(n + 1, 0.0);
  chain.outside.assign(n + 1, 0.0);
  chain.margins.assign(n, 0.0);
  chain.z[n] = projector;
  for (std::size_t j = n; j-- > 0;) {
    const Matrix w = hermitian_part(unitaries[j].adjoint() * kron(chain.z[j + 1], id_m) * unitaries[j]);
    const Matrix& vj = v[j];
    const Index r = vj.cols();
    const Matrix vm = kron(vj, id_m);
    const Matrix y = raw(j);
    const Matrix in = hermitian_part(kron(y, id_m) - vm.adjoint() * w * vm);
    const bool proper = r < dim_h;
    double shift = std::max(0.0, -min_eigenvalue(in)) + (proper ? margin : 0.0);
    Matrix z = vj * (y + shift * Matrix::Identity(r, r)) * vj.adjoint();
    if (proper) {
      Eigen::SelfAdjointEigenSolver<Matrix> es(Matrix::Identity(dim_h, dim_h) - vj * vj.adjoint());
      const Matrix q = es.eigenvectors().rightCols(dim_h - r);
      const Matrix qm = kron(q, id_m);
      const Matrix w12 = vm.adjoint() * w * qm;
      const Matrix w22 = qm.adjoint() * w * qm;
      const Matrix a = in + shift * Matrix::Identity(in.rows(), in.cols());
      const Matrix schur = hermitian_part(w22 + w12.adjoint() * a.ldlt().solve(w12));
      double c = std::max(0.0, Eigen::SelfAdjointEigenSolver<Matrix>(schur).eigenvalues().maxCoeff()) + margin;
      z += c * q * q.adjoint();
      chain.outside[j] = c;
    }
    chain.shifts[j] = shift;
    chain.z[j] = hermitian_part(z);
    chain.margins[j] = min_eigenvalue(step_slack(chain.z[j], chain.z[j + 1], unitaries[j], dim_m));
  }
  chain.value = chain.z[0](0, 0).real();
  return chain;
}

int first_violation(Index dim_h, Index dim_m, const std::vector<Matrix>& unitaries, const Matrix& projector,
                    const ZChain& chain, double tol) {
  check_inputs(dim_h, dim_m, unitaries, projector);
  const std::size_t n = unitaries.size();
  if (chain.z.size() != n + 1) throw std::invalid_argument("certificate chain has the wrong length");
  for (std::size_t j = 0; j < n; ++j) {
    if (chain.z[j].rows() != dim_h || chain.z[j].cols() != dim_h) return static_cast<int>(j);
    if (hermiticity_error(chain.z[j]) > tol) return static_cast<int>(j);
    const double scale = std::max({1.0, chain.z[j].norm(), chain.z[j + 1].norm()});
    if (min_eigenvalue(step_slack(chain.z[j], chain.z[j + 1], unitaries[j], dim_m)) < -tol * scale) {
      return static_cast<int>(j);
    }
  }
  if (chain.z[n].rows() != dim_h || (chain.z[n] - projector).cwiseAbs().maxCoeff() > tol) return static_cast<int>(n);
  return -1;
}

CheatResult optimal_cheat(const TwoPartyProtocol& p, Side cheater, int target, const sdp::Options& options) {
  if (target != 0 && target != 1) throw std::invalid_argument("target must be 0 or 1");
  p.check_shapes();
  const Side honest = cheater == Side::alice ? Side::bob : Side::alice;
  const Index dim_h = honest == Side::alice ? p.dim_a : p.dim_b;
  const Matrix& projector = honest == Side::alice ? p.alice_projectors[target] : p.bob_projectors[target];
  const std::vector<Matrix> us = honest_unitaries(p, honest);

  const std::vector<Matrix> supports = reachable_supports(dim_h, p.dim_m, us);
  sdp::Problem prob = reduced_cheat_sdp(dim_h, p.dim_m, us, projector, supports);
  sdp::Solution sol = sdp::solve(prob, options);
  CheatResult r;
  r.target = target;
  r.cheater = cheater;
  r.status = sol.status;
  r.residuals = sol.residuals;
  r.iterations = sol.iterations;
  r.probability = sol.primal_value;
  if (!sol.converged()) {
    throw std::runtime_error("cheat SDP did not converge (" + sdp::to_string(sol.status) + "): " + sol.message);
  }
  r.certificate = refine_certificate(dim_h, p.dim_m, us, projector, supports, sol.dual);
  r.dual_bound = r.certificate.value;
  return r;
}

KitaevCheck kitaev_product_check(const TwoPartyProtocol& p, const sdp::Options& options) {
  ValidationReport v = validate_protocol(p);
  KitaevCheck k;
  k.alice = optimal_cheat(p, Side::alice, 1, options);
  k.bob = optimal_cheat(p, Side::bob, 1, options);
  k.p_1star = k.alice.probability;
  k.p_star1 = k.bob.probability;
  k.product = k.p_1star * k.p_star1;
  k.p1 = v.p1;
  k.pass = k.product >= k.p1 - 1e-5;
  k.balanced = v.condition("balance").holds;
  if (k.balanced) k.max_pass = std::max(k.p_1star, k.p_star1) >= 1.0 / std::sqrt(2.0) - 1e-5;
  return k;
}

FSequence f_sequence(const TwoPartyProtocol& p, const ZChain& chain_a, const ZChain& chain_b, double tol) {
  p.check_shapes();
  const std::vector<Matrix> ua = honest_unitaries(p, Side::alice);
  const std::vector<Matrix> ub = honest_unitaries(p, Side::bob);
  int va = first_violation(p.dim_a, p.dim_m, ua, p.alice_projectors[1], chain_a, 1e-9);
  if (va >= 0) throw std::invalid_argument("Z_A certificate violates constraint " + std::to_string(va));
  int vb = first_violation(p.dim_b, p.dim_m, ub, p.bob_projectors[1], chain_b, 1e-9);
  if (vb >= 0) throw std::invalid_argument("Z_B certificate violates constraint " + std::to_string(vb));

  const Layout l = p.layout();
  FSequence out;
  for (int j = 0; j <= p.rounds(); ++j) {
    const Vector psi = honest_state(p, j).amplitudes();
    Vector w = apply_on_factors(psi, l, chain_a.z[static_cast<std::size_t>(j)], std::vector<int>{0}).col(0);
    w = apply_on_factors(w, l, chain_b.z[static_cast<std::size_t>(j)], std::vector<int>{2}).col(0);
    out.f.push_back(psi.dot(w).real());
  }
  out.dual_product = chain_a.z[0](0, 0).real() * chain_b.z[0](0, 0).real();
  out.p1 = validate_protocol(p).p1;
  out.starts_at_product = std::abs(out.f.front() - out.dual_product) <= tol;
  out.monotone = true;
  for (std::size_t j = 0; j + 1 < out.f.size(); ++j) {
    if (out.f[j + 1] > out.f[j] + tol) out.monotone = false;
  }
  out.ends_at_p1 = std::abs(out.f.back() - out.p1) <= tol;
  return out;
}

KPartyCheck kparty_product_check(const KPartyProtocol& p, const sdp::Options& options) {
  ValidationReport v = validate_protocol(p);
  KPartyCheck out;
  out.honest = {v.p0, v.p1};
  for (int b = 0; b < 2; ++b) {
    out.product[b] = 1.0;
    for (int i = 0; i < p.parties(); ++i) {
      double q = 1.0;
      if (p.parties() > 1) q = optimal_cheat(merge_cheaters(p, i), Side::bob, b, options).probability;
      out.p[b].push_back(q);
      out.product[b] *= q;
    }
    out.holds[b] = out.product[b] >= out.honest[b] - 1e-5;
  }
  out.pass = out.holds[0] && out.holds[1];
  return out;
}

KPartyBound kparty_bias_bound(long long k) {
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  KPartyBound b;
  b.k = k;
  b.q_min = std::pow(2.0, -1.0 / static_cast<double>(k));
  b.bias_bound = b.q_min - 0.5;
  b.expansion = 1.0 - std::log(2.0) / static_cast<double>(k);
  b.expansion_holds = b.q_min >= b.expansion;
  return b;
}

GroupBound group_players(long long k, long long g) {
  if (k < 1 || g < 1 || g > k) throw std::invalid_argument("need 1 <= g <= k");
  GroupBound out;
  out.k = k;
  out.g = g;
  out.k_prime = (k + g - 1) / g;
  out.bound = kparty_bias_bound(out.k_prime);
  return out;
}

}  // namespace qcf::lowerbound
