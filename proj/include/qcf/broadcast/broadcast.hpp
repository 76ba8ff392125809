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

#ifndef QCF_BROADCAST_BROADCAST_HPP
#define QCF_BROADCAST_BROADCAST_HPP

#include <set>
#include <string>
#include <vector>

#include "qcf/core/json.hpp"
#include "qcf/core/ops.hpp"

namespace qcf::broadcast {

/// One step of a channel transcript. `uses` counts the channel uses this
/// event consumed (pairwise or broadcast, depending on the emulation).
struct Event {
  int round = 0;
  std::string actor;
  std::string action;
  std::vector<int> classical_bits;
  int uses = 0;
};

using Transcript = std::vector<Event>;

int total_uses(const Transcript& t);
Json to_json(const Transcript& t);

/// k parties sharing a state; owner[f] is the party holding factor f.
class BroadcastState {
 public:
  BroadcastState(int k, StateVector state, std::vector<int> owner);

  int k() const { return k_; }
  const StateVector& state() const { return state_; }
  const std::vector<int>& owner() const { return owner_; }
  std::vector<int> factors_of(int party) const;
  /// All factors held by any of `parties`, ascending.
  std::vector<int> factors_of(const std::set<int>& parties) const;

  void set_state(StateVector s);

 private:
  int k_;
  StateVector state_;
  std::vector<int> owner_;
};

Matrix pauli_x();
Matrix pauli_z();
Matrix hadamard();
Matrix cnot();

/// alpha|0^k> + beta|1^k>, one qubit per party (party p holds factor p).
BroadcastState broadcast_qubit(Complex alpha, Complex beta, int k);

struct EmulationResult {
  BroadcastState state;
  std::vector<int> r_bits;  // r_j of recipients 1..k-1
  int parity = 0;
  bool corrected = false;   // sender applied the parity fix
  int uses = 0;             // pairwise channel uses
  double fidelity = 0.0;    // with broadcast_qubit(alpha, beta, k)
  Transcript transcript;
};

/// Broadcast built from pairwise channels: fan-out by CNOTs, one qubit to
/// each recipient, random phase flips r_j reported back, sender parity fix.
EmulationResult emulate_broadcast_pairwise(Complex alpha, Complex beta, int k, Rng& rng,
                                           bool parity_correction = true);

struct ClassicalResult {
  std::vector<int> outcomes;  // per party; party 0 is the sender
  int uses = 0;
  Transcript transcript;
};

/// Classical bit sent as |b> through the quantum broadcast channel; every
/// party measures its qubit.
ClassicalResult classical_broadcast(int b, int k, Rng& rng);
/// Same, but the (possibly dishonest) sender feeds an arbitrary qubit.
ClassicalResult broadcast_and_measure(Complex alpha, Complex beta, int k, Rng& rng);

struct EprResult {
  StateVector pair;           // factors (P_i, P_j)
  StateVector full;           // all k qubits after the protocol
  std::vector<int> helper_outcomes;  // in helper order
  int parity = 0;
  double fidelity = 0.0;      // of `pair` with (|00> + |11>)/sqrt2
  double entanglement = 0.0;  // entropy between {i, j} and the helpers
  int uses = 0;               // broadcast channel uses
  Transcript transcript;
};

/// P_i broadcasts |+>, each helper applies H, measures and broadcasts the
/// result, P_i applies sigma_z on odd parity.
EprResult establish_epr(int i, int j, int k, Rng& rng);

struct TeleportResult {
  StateVector received;  // factor 0 received qubit, then the payload's reference factors
  int m1 = 0;            // payload outcome (selects Z correction)
  int m2 = 0;            // pair-half outcome (selects X correction)
  int branch = 0;        // 2 * m1 + m2
  int classical_bits_sent = 2;
};

/// Teleports factor 0 of `payload` (dimension 2); any further factors are a
/// reference system carried along. Rejects pairs with EPR fidelity < 1 - 1e-10.
TeleportResult teleport(const StateVector& payload, const StateVector& epr, Rng& rng);

struct ChannelResult {
  StateVector received;
  int uses = 0;  // broadcast channel uses
  double fidelity = 0.0;
  Transcript transcript;
};

/// Pairwise quantum channel from P_i to P_j made of establish_epr and teleport.
ChannelResult simulate_quantum_channel_via_qbc(int i, int j, const StateVector& payload, int k, Rng& rng);

/// Declarative cheating step: a unitary on, or a computational-basis
/// measurement of, factors the party owns.
struct Action {
  enum class Kind { unitary, measure };
  Kind kind = Kind::unitary;
  int round = 0;
  Matrix unitary;
  std::vector<int> factors;
};

enum class Honesty { honest, cheating };

struct PartyRole {
  int id = 0;
  Honesty honesty = Honesty::honest;
  std::vector<Action> schedule;
};

struct ScheduleOutcome {
  std::vector<std::vector<Index>> measurements;  // one entry per measure action, in order
};

/// Runs every action of `role` scheduled for `round`. Throws
/// std::invalid_argument if an action touches a factor the party does not own.
ScheduleOutcome apply_schedule(BroadcastState& state, const PartyRole& role, int round, Rng& rng);

struct CollapseResult {
  StateVector honest_state;     // residual state of the honest party's factors
  std::vector<int> outcomes;    // cheaters' measurement results, by factor
  int parity = 0;
};

/// Every cheater applies H (if `hadamard`) to its factors and measures them.
/// `cheaters` together with the single remaining party must cover all parties.
CollapseResult cheat_hadamard_collapse(const BroadcastState& state, const std::set<int>& cheaters, Rng& rng,
                                       bool hadamard = true);

}  // namespace qcf::broadcast

#endif  // QCF_BROADCAST_BROADCAST_HPP
