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

#ifndef QCF_LOWERBOUND_PROTOCOL_HPP
#define QCF_LOWERBOUND_PROTOCOL_HPP

#include <array>
#include <string>
#include <vector>

#include "qcf/core/state.hpp"

namespace qcf::lowerbound {

/*
 * 2N-round two-party protocol on A (x) M (x) B. Round j applies
 * alice_unitaries[j] on A (x) M, then bob_unitaries[j] on M (x) B,
 * starting from |0>. Projector c is the final measurement for outcome c.
 */
struct TwoPartyProtocol {
  std::string name;
  Index dim_a = 1;
  Index dim_m = 1;
  Index dim_b = 1;
  std::vector<Matrix> alice_unitaries;
  std::vector<Matrix> bob_unitaries;
  std::array<Matrix, 2> alice_projectors;
  std::array<Matrix, 2> bob_projectors;

  int rounds() const { return static_cast<int>(alice_unitaries.size()); }
  Layout layout() const { return Layout{dim_a, dim_m, dim_b}; }
  /// Throws std::invalid_argument on any shape mismatch.
  void check_shapes() const;
};

/*
 * N-round protocol on A_0 (x) ... (x) A_{k-1} (x) M. Round j applies
 * unitaries[j] on A_{turns[j]} (x) M. Parties are numbered from 0.
 */
struct KPartyProtocol {
  std::string name;
  std::vector<Index> party_dims;
  Index dim_m = 1;
  std::vector<int> turns;
  std::vector<Matrix> unitaries;
  std::vector<std::array<Matrix, 2>> projectors;

  int parties() const { return static_cast<int>(party_dims.size()); }
  int rounds() const { return static_cast<int>(turns.size()); }
  Layout layout() const;
  void check_shapes() const;
};

struct Condition {
  std::string name;
  double residual = 0.0;
  bool holds = false;
};

struct ValidationReport {
  std::vector<Condition> conditions;
  bool valid = false;
  double p0 = 0.0;
  double p1 = 0.0;
  double p_abort = 0.0;
  StateVector final_state;
  /// Throws std::out_of_range for an unknown name.
  const Condition& condition(const std::string& name) const;
};

/// Honest state after round j (0 <= j <= N).
StateVector honest_state(const TwoPartyProtocol& p, int j);
StateVector honest_state(const KPartyProtocol& p, int j);

/// Unitarity (1e-10), projector, agreement and balance conditions (tol);
/// failures are reported, not thrown. p_b is measured by the first party.
ValidationReport validate_protocol(const TwoPartyProtocol& p, double tol = 1e-9);
ValidationReport validate_protocol(const KPartyProtocol& p, double tol = 1e-9);

/*
 * Two-party view with `honest` as Alice and every other party fused into
 * Bob (B = the other A_i in increasing order). Consecutive turns on one
 * side are multiplied together and identity rounds keep the alternation.
 * Bob's projectors are the products of the other parties' projectors.
 */
TwoPartyProtocol merge_cheaters(const KPartyProtocol& p, int honest);

/// Factor order taking the k-party layout to merge_cheaters' (A, M, B).
std::vector<int> merged_factor_order(const KPartyProtocol& p, int honest);

}  // namespace qcf::lowerbound

#endif  // QCF_LOWERBOUND_PROTOCOL_HPP
