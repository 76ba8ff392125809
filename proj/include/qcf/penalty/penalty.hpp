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

#ifndef QCF_PENALTY_PENALTY_HPP
#define QCF_PENALTY_PENALTY_HPP

#include <optional>
#include <string>
#include <vector>

#include "qcf/core/ops.hpp"
#include "qcf/sdp/solver.hpp"

namespace qcf::penalty {

/// Two-party coin flip in which a caught cheater pays v coins.
/// Alice wins on outcome 0, Bob on outcome 1.
class PenaltyGame {
 public:
  /// Throws std::invalid_argument for v < 4.
  explicit PenaltyGame(double v);

  double v() const { return v_; }
  double delta() const { return delta_; }

 private:
  double v_;
  double delta_;
};

/// sqrt(delta)|a>|a> + sqrt(1 - delta)|2>|2> over [3,3].
StateVector commit_state(int a, const PenaltyGame& game);
/// Reduced state of the register Alice sends first.
DensityMatrix sent_register(int a, const PenaltyGame& game);

enum class Verification { passed, failed };

struct Transcript {
  int a = 0;
  int b = 0;
  Verification verification = Verification::passed;
  std::optional<int> outcome;  // a xor b, empty on abort
  double payoff_alice = 0.0;
  double payoff_bob = 0.0;
};

/// Payoffs for a finished run; a failed verification charges Alice v.
Transcript settle(int a, int b, bool verified, double v);

/// Born-exact run of the three protocol steps with both parties honest.
Transcript run_honest(const PenaltyGame& game, Rng& rng);

struct BobAttack {
  std::string description;
  HelstromResult measurement;  // on Bob's qutrit, outcome g = guess of a
  double expected_win = 0.0;   // 1/2 + 1/sqrt(v)
  double simulated_win = 0.0;  // exact evaluation against honest Alice
};

/// Guess a with the Helstrom measurement, then announce b = 1 - guess.
BobAttack bob_attack(const PenaltyGame& game);

/*
 * Dishonest Alice's optimal strategy as an SDP in payoff units.
 *
 * Blocks: "tau" on Bob's qutrit (the state he holds after step 1) and
 * "rho_ba" on [A, B] for b, a in {0, 1} (the pair Bob holds after Alice
 * answers a to his b). Constraints:
 *   normalization:  tr tau = 1
 *   marginal_b:     tr_A(rho_b0 + rho_b1) - tau = 0
 * Objective: (1/2) sum_{a,b} (delta_ab + v) <psi_a|rho_ba|psi_a> - v.
 */
sdp::Problem alice_attack_sdp(const PenaltyGame& game);

/// Blocks of the honest strategy, in alice_attack_sdp's block order.
std::vector<Matrix> honest_alice_blocks(const PenaltyGame& game);

struct CertificateParameters {
  double m0 = 0.0;
  double m1 = 0.0;
  double m2 = 0.0;
  double lambda = 0.0;
  double payoff_bound = 0.0;  // lambda / 2 - v
};

/// Closed-form diagonal dual solution.
CertificateParameters certificate_parameters(const PenaltyGame& game);

/// M_0 = diag(m0, m1, m2), M_1 = diag(m1, m0, m2).
Matrix certificate_m(int b, const CertificateParameters& params);

/// The closed-form point in alice_attack_sdp's multiplier convention:
/// normalization -> lambda/2, marginal_b -> M_b/2.
sdp::DualCertificate paper_dual_certificate(const PenaltyGame& game);
sdp::DualCertificate dual_certificate(const CertificateParameters& params);

struct NamedCheck {
  std::string name;
  double value = 0.0;  // min eigenvalue, or lhs - rhs for scalar checks
  bool holds = false;
};

struct CertificateReport {
  CertificateParameters params;
  std::vector<NamedCheck> psd_checks;     // L_b - (v + delta_ab)|psi_a><psi_a|, lambda 1 - M_0 - M_1
  std::vector<NamedCheck> scalar_checks;  // sufficient scalar conditions on m0, m1, m2
  bool feasible = false;
};

/// Checks the closed-form point against the dual constraints with L_b = 1 (x) M_b.
CertificateReport check_certificate(const PenaltyGame& game, const CertificateParameters& params,
                                    double tol = 1e-9);

struct WinBounds {
  double bob = 0.0;          // 1/2 + 1/sqrt(v)
  double alice = 0.0;        // min(bob, lambda/2 - v)
  double alice_dual = 0.0;   // lambda/2 - v
  double alice_proof = 0.0;  // 1/2 + 1/(8 sqrt(v))
};

WinBounds expected_win_bound(double v);

}  // namespace qcf::penalty

#endif  // QCF_PENALTY_PENALTY_HPP
