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

#ifndef QCF_LOWERBOUND_CHEAT_HPP
#define QCF_LOWERBOUND_CHEAT_HPP

#include <array>
#include <string>
#include <vector>

#include "qcf/lowerbound/protocol.hpp"
#include "qcf/sdp/solver.hpp"

namespace qcf::lowerbound {

enum class Side { alice, bob };

std::string to_string(Side s);
Side side_from_string(const std::string& s);

/*
 * Cheater's optimization seen from the honest party H with message space M:
 *
 *   maximize    tr((Pi (x) 1_M) rho_N)
 *   subject to  tr_M rho_0 = |0><0|_H                      ("base")
 *               tr_M rho_j - tr_M(U_j rho_{j-1} U_j^H) = 0  ("step_j", 1 <= j <= N)
 *
 * over blocks rho_0..rho_N on H (x) M. The unitaries act on H (x) M.
 */
sdp::Problem cheat_sdp(Index dim_h, Index dim_m, const std::vector<Matrix>& unitaries, const Matrix& projector);

/// The honest side's unitaries in H (x) M order (Bob's are conjugated by the swap).
std::vector<Matrix> honest_unitaries(const TwoPartyProtocol& p, Side honest);

/*
 * Orthonormal bases V_0..V_N of the largest support the honest marginal
 * tr_M rho_j can reach (V_0 = |0>). Every feasible rho_j lives on
 * range(V_j) (x) M, so the base constraint leaves cheat_sdp without an
 * interior point; restricting to these supports restores one.
 */
std::vector<Matrix> reachable_supports(Index dim_h, Index dim_m, const std::vector<Matrix>& unitaries,
                                       double tol = 1e-10);

/// cheat_sdp on the reachable supports: rho_j = (V_j (x) 1) X_j (V_j (x) 1)^H
/// with blocks X_j on r_j (x) M; "base" becomes tr X_0 = 1.
sdp::Problem reduced_cheat_sdp(Index dim_h, Index dim_m, const std::vector<Matrix>& unitaries, const Matrix& projector,
                               const std::vector<Matrix>& supports);

/// Dual chain Z_0..Z_N on the honest space, with Z_N = Pi.
struct ZChain {
  std::vector<Matrix> z;
  double value = 0.0;           // <0|Z_0|0>
  std::vector<double> shifts;   // identity shift added to each raw multiplier
  std::vector<double> outside;  // c_j, weight on the unreachable complement
  std::vector<double> margins;  // min eigenvalue of Z_j (x) 1 - U^H (Z_{j+1} (x) 1) U
};

/*
 * Turns solver multipliers into a chain that satisfies every step
 * constraint: Z_N = Pi, then backward Z_j = V_j (Y_j + s_j) V_j^H + c_j (1 - V_j V_j^H),
 * with s_j the smallest shift (plus `margin` when the support is proper)
 * making the in-support block PSD and c_j from its Schur complement.
 * `supports` empty means the unrestricted cheat_sdp.
 */
ZChain refine_certificate(Index dim_h, Index dim_m, const std::vector<Matrix>& unitaries, const Matrix& projector,
                          const std::vector<Matrix>& supports, const sdp::DualCertificate& cert,
                          double margin = 1e-9);

struct CheatResult {
  int target = 1;
  Side cheater = Side::bob;
  double probability = 0.0;  // primal value
  double dual_bound = 0.0;   // refined certificate value, a rigorous upper bound
  sdp::Status status = sdp::Status::max_iterations;
  sdp::Residuals residuals;
  int iterations = 0;
  ZChain certificate;
};

/// Best probability that `cheater` makes the honest party output `target`.
CheatResult optimal_cheat(const TwoPartyProtocol& p, Side cheater, int target, const sdp::Options& options = {});

struct KitaevCheck {
  double p_1star = 0.0;  // cheating Alice forces 1
  double p_star1 = 0.0;  // cheating Bob forces 1
  double product = 0.0;
  double p1 = 0.0;       // honest probability of 1
  bool pass = false;     // product >= p1 - 1e-5
  bool balanced = false;
  bool max_pass = true;  // for balanced protocols: max >= 1/sqrt2 - 1e-5
  CheatResult alice;
  CheatResult bob;
};

KitaevCheck kitaev_product_check(const TwoPartyProtocol& p, const sdp::Options& options = {});

struct FSequence {
  std::vector<double> f;
  double dual_product = 0.0;  // <0|Z_A,0|0> <0|Z_B,0|0>
  double p1 = 0.0;
  bool starts_at_product = false;
  bool monotone = false;
  bool ends_at_p1 = false;
};

/*
 * F_j = <psi_j| Z_A,j (x) 1_M (x) Z_B,j |psi_j>, where chain_a certifies a
 * cheating Bob (on A) and chain_b a cheating Alice (on B), both for outcome 1.
 * Throws std::invalid_argument naming the first violated step constraint.
 */
FSequence f_sequence(const TwoPartyProtocol& p, const ZChain& chain_a, const ZChain& chain_b, double tol = 1e-7);

/// Checks the chain against the step constraints, with `tol` relative to
/// max(1, |Z_j|); returns the first violated index, or -1.
int first_violation(Index dim_h, Index dim_m, const std::vector<Matrix>& unitaries, const Matrix& projector,
                    const ZChain& chain, double tol);

struct KPartyCheck {
  std::array<std::vector<double>, 2> p;  // p[b][i]: coalition of all but i makes i output b
  std::array<double, 2> product{};
  std::array<double, 2> honest{};        // p_0, p_1
  std::array<bool, 2> holds{};
  bool pass = false;
};

KPartyCheck kparty_product_check(const KPartyProtocol& p, const sdp::Options& options = {});

struct KPartyBound {
  long long k = 1;
  double q_min = 0.5;       // 2^(-1/k)
  double bias_bound = 0.0;  // q_min - 1/2
  double expansion = 0.5;   // 1 - ln2 / k
  bool expansion_holds = true;
};

KPartyBound kparty_bias_bound(long long k);

struct GroupBound {
  long long k = 1;
  long long g = 1;
  long long k_prime = 1;  // ceil(k / g)
  KPartyBound bound;
};

GroupBound group_players(long long k, long long g);

}  // namespace qcf::lowerbound

#endif  // QCF_LOWERBOUND_CHEAT_HPP
