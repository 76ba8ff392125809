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

#include "qcf/penalty/penalty.hpp"

#include <cmath>
#include <stdexcept>

namespace qcf::penalty {

namespace {

std::string block_name(int b, int a) { return "rho_" + std::to_string(b) + std::to_string(a); }

}  // namespace

PenaltyGame::PenaltyGame(double v) : v_(v), delta_(0.0) {
  if (!(v >= 4.0) || !std::isfinite(v)) {
    throw std::invalid_argument("PenaltyGame: penalty v must be a finite number >= 4");
  }
  delta_ = 2.0 / std::sqrt(v);
}

StateVector commit_state(int a, const PenaltyGame& game) {
  if (a != 0 && a != 1) throw std::invalid_argument("commit_state: a must be 0 or 1");
  Vector psi = Vector::Zero(9);
  psi(a * 3 + a) = std::sqrt(game.delta());
  psi(8) = std::sqrt(1.0 - game.delta());
  return StateVector(Layout{3, 3}, psi);
}

DensityMatrix sent_register(int a, const PenaltyGame& game) {
  return partial_trace(DensityMatrix::pure(commit_state(a, game)), {1});
}

Transcript settle(int a, int b, bool verified, double v) {
  Transcript t;
  t.a = a;
  t.b = b;
  if (!verified) {
    t.verification = Verification::failed;
    t.payoff_alice = -v;
    t.payoff_bob = 0.0;
    return t;
  }
  t.outcome = a ^ b;
  t.payoff_alice = *t.outcome == 0 ? 1.0 : 0.0;
  t.payoff_bob = 1.0 - t.payoff_alice;
  return t;
}

Transcript run_honest(const PenaltyGame& game, Rng& rng) {
  const int a = rng.bit();
  const StateVector psi = commit_state(a, game);
  const int b = rng.bit();
  const std::vector<int> both{0, 1};
  const ProjectiveResult check = measure_projector(psi, psi.projector(), both, rng);
  return settle(a, b, check.accepted, game.v());
}

BobAttack bob_attack(const PenaltyGame& game) {
  BobAttack out;
  out.description =
      "Helstrom measurement on the received qutrit to guess a, then announce b = 1 - guess so that a xor b = 1";
  out.measurement = helstrom(sent_register(0, game), sent_register(1, game));
  out.expected_win = 0.5 + 1.0 / std::sqrt(game.v());
  const Matrix* guess[2] = {&out.measurement.projector0, &out.measurement.projector1};
  double win = 0.0;
  for (int a = 0; a < 2; ++a) {
    const StateVector psi = commit_state(a, game);
    const Matrix lifted = embed(*guess[a], psi.layout(), {1});
    win += 0.5 * (psi.amplitudes().adjoint() * lifted * psi.amplitudes())(0, 0).real();
  }
  out.simulated_win = win;
  return out;
}

sdp::Problem alice_attack_sdp(const PenaltyGame& game) {
  sdp::Problem p;
  p.add_block("tau", Layout{3});
  for (int b = 0; b < 2; ++b) {
    for (int a = 0; a < 2; ++a) p.add_block(block_name(b, a), Layout{3, 3});
  }
  p.add_constraint("normalization", Matrix::Identity(1, 1));
  p.add_trace_term("normalization", "tau", 1.0, {});
  for (int b = 0; b < 2; ++b) {
    const std::string name = "marginal_" + std::to_string(b);
    p.add_constraint(name, Matrix::Zero(3, 3));
    for (int a = 0; a < 2; ++a) p.add_trace_term(name, block_name(b, a), 1.0, {1});
    p.add_trace_term(name, "tau", -1.0, {0});
  }
  for (int b = 0; b < 2; ++b) {
    for (int a = 0; a < 2; ++a) {
      const double weight = 0.5 * ((a == b ? 1.0 : 0.0) + game.v());
      p.set_objective(block_name(b, a), weight * commit_state(a, game).projector());
    }
  }
  p.set_offset(-game.v());
  return p;
}

std::vector<Matrix> honest_alice_blocks(const PenaltyGame& game) {
  std::vector<Matrix> blocks;
  blocks.push_back(0.5 * (sent_register(0, game).matrix() + sent_register(1, game).matrix()));
  for (int b = 0; b < 2; ++b) {
    for (int a = 0; a < 2; ++a) blocks.push_back(0.5 * commit_state(a, game).projector());
  }
  return blocks;
}

CertificateParameters certificate_parameters(const PenaltyGame& game) {
  const double v = game.v();
  const double d = game.delta();
  const double s = std::sqrt(4.0 - 4.0 * d + std::pow(d + 2.0 * d * v, 2));
  CertificateParameters c;
  c.m0 = 0.5 * (1.0 + v) * (2.0 - d * (1.0 + 2.0 * v) + s);
  c.m1 = 0.5 * v * (2.0 + d + 2.0 * d * v - s);
  c.m2 = 0.5 * (c.m0 + c.m1);
  c.lambda = c.m0 + c.m1;
  c.payoff_bound = 0.5 * c.lambda - v;
  return c;
}

Matrix certificate_m(int b, const CertificateParameters& c) {
  Matrix m = Matrix::Zero(3, 3);
  m(0, 0) = b == 0 ? c.m0 : c.m1;
  m(1, 1) = b == 0 ? c.m1 : c.m0;
  m(2, 2) = c.m2;
  return m;
}

sdp::DualCertificate dual_certificate(const CertificateParameters& params) {
  sdp::DualCertificate cert;
  cert.multipliers["normalization"] = Matrix::Constant(1, 1, params.lambda / 2.0);
  cert.multipliers["marginal_0"] = certificate_m(0, params) / 2.0;
  cert.multipliers["marginal_1"] = certificate_m(1, params) / 2.0;
  cert.claimed_value = params.payoff_bound;
  return cert;
}

sdp::DualCertificate paper_dual_certificate(const PenaltyGame& game) {
  return dual_certificate(certificate_parameters(game));
}

CertificateReport check_certificate(const PenaltyGame& game, const CertificateParameters& c, double tol) {
  const double v = game.v();
  const double d = game.delta();
  CertificateReport r;
  r.params = c;
  r.feasible = true;

  const Matrix id3 = Matrix::Identity(3, 3);
  for (int b = 0; b < 2; ++b) {
    const Matrix l = kron(id3, certificate_m(b, c));
    for (int a = 0; a < 2; ++a) {
      const double w = v + (a == b ? 1.0 : 0.0);
      NamedCheck nc;
      nc.name = "L_" + std::to_string(b) + " - " + (a == b ? "(v+1)" : "v") + "|psi_" + std::to_string(a) +
                "><psi_" + std::to_string(a) + "|";
      nc.value = min_eigenvalue(Matrix(l - w * commit_state(a, game).projector()));
      nc.holds = nc.value >= -tol;
      r.psd_checks.push_back(nc);
    }
  }
  {
    NamedCheck nc;
    nc.name = "lambda*1 - M_0 - M_1";
    nc.value = min_eigenvalue(Matrix(c.lambda * id3 - certificate_m(0, c) - certificate_m(1, c)));
    nc.holds = nc.value >= -tol;
    r.psd_checks.push_back(nc);
  }

  auto scalar = [&](const std::string& name, double lhs, double rhs) {
    NamedCheck nc;
    nc.name = name;
    nc.value = lhs - rhs;
    nc.holds = nc.value >= -tol * std::max({1.0, std::abs(lhs), std::abs(rhs)});
    r.scalar_checks.push_back(nc);
  };
  scalar("m0 >= 0", c.m0, 0.0);
  scalar("m1 >= 0", c.m1, 0.0);
  scalar("m0 >= (v+1) delta", c.m0, (v + 1) * d);
  scalar("m2 >= (v+1)(1-delta)", c.m2, (v + 1) * (1 - d));
  scalar("m0 m2 >= (v+1)(1-delta) m0 + (v+1) delta m2", c.m0 * c.m2, (v + 1) * (1 - d) * c.m0 + (v + 1) * d * c.m2);
  scalar("m1 >= v delta", c.m1, v * d);
  scalar("m2 >= v(1-delta)", c.m2, v * (1 - d));
  scalar("m1 m2 >= v(1-delta) m1 + v delta m2", c.m1 * c.m2, v * (1 - d) * c.m1 + v * d * c.m2);

  for (const auto& nc : r.psd_checks) r.feasible = r.feasible && nc.holds;
  for (const auto& nc : r.scalar_checks) r.feasible = r.feasible && nc.holds;
  return r;
}

WinBounds expected_win_bound(double v) {
  const PenaltyGame game(v);
  WinBounds w;
  w.bob = 0.5 + 1.0 / std::sqrt(v);
  w.alice_dual = certificate_parameters(game).payoff_bound;
  w.alice = std::min(w.bob, w.alice_dual);
  w.alice_proof = 0.5 + 1.0 / (8.0 * std::sqrt(v));
  return w;
}

}  // namespace qcf::penalty
