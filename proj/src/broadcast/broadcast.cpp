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

#include "qcf/broadcast/broadcast.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qcf::broadcast {

namespace {

std::string party(int p) { return "P" + std::to_string(p); }

void check_k(int k) {
  if (k < 2) throw std::invalid_argument("broadcast: k must be >= 2");
}

std::vector<int> identity_owner(int k) {
  std::vector<int> o(static_cast<std::size_t>(k));
  for (int p = 0; p < k; ++p) o[static_cast<std::size_t>(p)] = p;
  return o;
}

Vector ghz_amplitudes(Complex alpha, Complex beta, int k) {
  Vector v = Vector::Zero(Index{1} << k);
  v(0) = alpha;
  v(v.size() - 1) += beta;
  return v;
}

StateVector epr_pair() {
  Vector v = Vector::Zero(4);
  v(0) = v(3) = 1.0 / std::sqrt(2.0);
  return StateVector(Layout{2, 2}, v);
}

}  // namespace

int total_uses(const Transcript& t) {
  int n = 0;
  for (const auto& e : t) n += e.uses;
  return n;
}

Json to_json(const Transcript& t) {
  Json out = Json::array();
  for (const auto& e : t) {
    out.push_back({{"round", e.round},
                   {"actor", e.actor},
                   {"action", e.action},
                   {"classical_bits", e.classical_bits},
                   {"use_count", e.uses}});
  }
  return out;
}

BroadcastState::BroadcastState(int k, StateVector state, std::vector<int> owner)
    : k_(k), state_(std::move(state)), owner_(std::move(owner)) {
  check_k(k_);
  if (owner_.size() != state_.layout().factors()) {
    throw std::invalid_argument("BroadcastState: ownership must list every factor");
  }
  for (int p : owner_) {
    if (p < 0 || p >= k_) throw std::invalid_argument("BroadcastState: owner out of range");
  }
}

std::vector<int> BroadcastState::factors_of(int p) const {
  std::vector<int> out;
  for (std::size_t f = 0; f < owner_.size(); ++f) {
    if (owner_[f] == p) out.push_back(static_cast<int>(f));
  }
  return out;
}

std::vector<int> BroadcastState::factors_of(const std::set<int>& parties) const {
  std::vector<int> out;
  for (std::size_t f = 0; f < owner_.size(); ++f) {
    if (parties.count(owner_[f])) out.push_back(static_cast<int>(f));
  }
  return out;
}

void BroadcastState::set_state(StateVector s) {
  if (!(s.layout() == state_.layout())) throw std::invalid_argument("BroadcastState: layout change");
  state_ = std::move(s);
}

Matrix pauli_x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

Matrix pauli_z() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

Matrix hadamard() {
  Matrix m(2, 2);
  m << 1, 1, 1, -1;
  return m / std::sqrt(2.0);
}

Matrix cnot() {
  Matrix m = Matrix::Zero(4, 4);
  m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1.0;
  return m;
}

BroadcastState broadcast_qubit(Complex alpha, Complex beta, int k) {
  check_k(k);
  return BroadcastState(k, StateVector(Layout::qubits(k), ghz_amplitudes(alpha, beta, k)), identity_owner(k));
}

EmulationResult emulate_broadcast_pairwise(Complex alpha, Complex beta, int k, Rng& rng, bool parity_correction) {
  check_k(k);
  Vector in(2);
  in << alpha, beta;
  StateVector s(Layout{2}, in);
  for (int f = 1; f < k; ++f) s = tensor(s, StateVector::basis(Layout{2}, 0));

  Transcript tr;
  for (int f = 1; f < k; ++f) s = apply_unitary(s, cnot(), {0, f});
  tr.push_back({0, party(0), "cnot fan-out onto fresh qubits", {}, 0});
  for (int f = 1; f < k; ++f) tr.push_back({1, party(0), "send qubit to " + party(f), {}, 1});

  std::vector<int> r;
  for (int f = 1; f < k; ++f) {
    const int bit = rng.bit();
    r.push_back(bit);
    if (bit) s = apply_unitary(s, pauli_z(), {f});
    tr.push_back({2, party(f), bit ? "phase flip, return r" : "no flip, return r", {bit}, 1});
  }
  int parity = 0;
  for (int bit : r) parity ^= bit;
  const bool fix = parity_correction && parity == 1;
  if (fix) s = apply_unitary(s, pauli_z(), {0});
  tr.push_back({3, party(0), fix ? "parity odd, phase flip" : "no parity fix", {parity}, 0});

  const BroadcastState target = broadcast_qubit(alpha, beta, k);
  EmulationResult out{BroadcastState(k, s, identity_owner(k)), r, parity, fix, 2 * (k - 1), 0.0, tr};
  out.fidelity = fidelity(target.state(), s);
  if (total_uses(out.transcript) != out.uses) throw std::logic_error("emulation use count mismatch");
  return out;
}

ClassicalResult broadcast_and_measure(Complex alpha, Complex beta, int k, Rng& rng) {
  BroadcastState st = broadcast_qubit(alpha, beta, k);
  ClassicalResult out;
  out.transcript.push_back({0, party(0), "quantum broadcast", {}, 1});
  StateVector s = st.state();
  for (int p = 0; p < k; ++p) {
    const MeasurementResult m = measure(s, {p}, rng);
    s = m.post_state;
    out.outcomes.push_back(static_cast<int>(m.outcome[0]));
    out.transcript.push_back({1, party(p), "measure received qubit", {out.outcomes.back()}, 0});
  }
  out.uses = 1;
  return out;
}

ClassicalResult classical_broadcast(int b, int k, Rng& rng) {
  if (b != 0 && b != 1) throw std::invalid_argument("classical_broadcast: b must be 0 or 1");
  return broadcast_and_measure(b == 0 ? 1.0 : 0.0, b == 1 ? 1.0 : 0.0, k, rng);
}

EprResult establish_epr(int i, int j, int k, Rng& rng) {
  check_k(k);
  if (i == j || i < 0 || j < 0 || i >= k || j >= k) throw std::invalid_argument("establish_epr: need distinct i, j < k");
  const double h = 1.0 / std::sqrt(2.0);
  BroadcastState st = broadcast_qubit(h, h, k);
  EprResult out{epr_pair(), st.state(), {}, 0, 0.0, 0.0, 0, {}};
  out.transcript.push_back({0, party(i), "quantum broadcast of |+>", {}, 1});

  StateVector s = st.state();
  std::vector<int> helpers;
  for (int p = 0; p < k; ++p) {
    if (p != i && p != j) helpers.push_back(p);
  }
  int round = 1;
  for (int p : helpers) {
    s = apply_unitary(s, hadamard(), {p});
    const MeasurementResult m = measure(s, {p}, rng);
    s = m.post_state;
    const int bit = static_cast<int>(m.outcome[0]);
    out.helper_outcomes.push_back(bit);
    out.parity ^= bit;
    out.transcript.push_back({round++, party(p), "hadamard, measure, broadcast result", {bit}, 1});
  }
  if (out.parity) s = apply_unitary(s, pauli_z(), {i});
  out.transcript.push_back({round, party(i), out.parity ? "parity odd, phase flip" : "no phase flip", {out.parity}, 0});
  out.full = s;

  std::vector<Index> digits;
  for (int bit : out.helper_outcomes) digits.push_back(bit);
  StateVector pair = slice_factors(s, helpers, digits);
  pair = StateVector(pair.layout(), pair.amplitudes() / pair.norm());
  if (i > j) {
    const std::vector<int> swap{1, 0};
    pair = permute_factors(pair, swap);
  }
  out.pair = pair;
  out.fidelity = fidelity(epr_pair(), pair);
  out.entanglement = von_neumann_entropy(partial_trace(DensityMatrix::pure(s), {std::min(i, j), std::max(i, j)}));
  out.uses = k - 1;
  if (total_uses(out.transcript) != out.uses) throw std::logic_error("epr use count mismatch");
  return out;
}

TeleportResult teleport(const StateVector& payload, const StateVector& epr, Rng& rng) {
  if (payload.layout().factors() < 1 || payload.layout().dim(0) != 2) {
    throw std::invalid_argument("teleport: payload factor 0 must be a qubit");
  }
  if (!(epr.layout() == Layout({2, 2}))) throw std::invalid_argument("teleport: pair must be two qubits");
  if (fidelity(epr_pair(), epr) < 1.0 - 1e-10) throw std::invalid_argument("teleport: degraded EPR pair");

  const int refs = static_cast<int>(payload.layout().factors()) - 1;
  const int half = refs + 1;
  StateVector s = tensor(payload, epr);
  s = apply_unitary(s, cnot(), {0, half});
  s = apply_unitary(s, hadamard(), {0});
  const std::vector<int> measured{0, half};
  const MeasurementResult m = measure(s, measured, rng);
  TeleportResult out{s, static_cast<int>(m.outcome[0]), static_cast<int>(m.outcome[1]), 0, 2};
  out.branch = 2 * out.m1 + out.m2;

  const std::vector<Index> digits{m.outcome[0], m.outcome[1]};
  StateVector rest = slice_factors(m.post_state, measured, digits);
  rest = StateVector(rest.layout(), rest.amplitudes() / rest.norm());
  // remaining factors: reference..., remote half (last)
  const int last = static_cast<int>(rest.layout().factors()) - 1;
  if (out.m2) rest = apply_unitary(rest, pauli_x(), {last});
  if (out.m1) rest = apply_unitary(rest, pauli_z(), {last});
  std::vector<int> order{last};
  for (int f = 0; f < last; ++f) order.push_back(f);
  out.received = permute_factors(rest, order);
  return out;
}

ChannelResult simulate_quantum_channel_via_qbc(int i, int j, const StateVector& payload, int k, Rng& rng) {
  EprResult epr = establish_epr(i, j, k, rng);
  TeleportResult tp = teleport(payload, epr.pair, rng);
  ChannelResult out{tp.received, 0, 0.0, epr.transcript};
  const int round = epr.transcript.back().round + 1;
  out.transcript.push_back({round, party(i), "broadcast teleportation bit m1", {tp.m1}, 1});
  out.transcript.push_back({round, party(i), "broadcast teleportation bit m2", {tp.m2}, 1});
  out.transcript.push_back({round + 1, party(j), "apply X^m2 Z^m1", {tp.m2, tp.m1}, 0});
  out.uses = total_uses(out.transcript);
  out.fidelity = fidelity(payload, tp.received);
  return out;
}

ScheduleOutcome apply_schedule(BroadcastState& state, const PartyRole& role, int round, Rng& rng) {
  ScheduleOutcome out;
  const std::vector<int> owned = state.factors_of(role.id);
  for (const auto& act : role.schedule) {
    if (act.round != round) continue;
    for (int f : act.factors) {
      if (std::find(owned.begin(), owned.end(), f) == owned.end()) {
        throw std::invalid_argument("schedule of " + party(role.id) + " touches factor " + std::to_string(f) +
                                    " it does not own");
      }
    }
    if (role.honesty == Honesty::honest) {
      throw std::invalid_argument("schedule: honest " + party(role.id) + " cannot run cheating actions");
    }
    if (act.kind == Action::Kind::unitary) {
      state.set_state(apply_unitary(state.state(), act.unitary, act.factors));
    } else {
      const MeasurementResult m = measure(state.state(), act.factors, rng);
      state.set_state(m.post_state);
      out.measurements.push_back(m.outcome);
    }
  }
  return out;
}

CollapseResult cheat_hadamard_collapse(const BroadcastState& state, const std::set<int>& cheaters, Rng& rng,
                                       bool hadamard_first) {
  std::set<int> honest;
  for (int p = 0; p < state.k(); ++p) {
    if (!cheaters.count(p)) honest.insert(p);
  }
  if (honest.size() != 1) throw std::invalid_argument("cheat_hadamard_collapse: exactly one honest party required");
  for (int c : cheaters) {
    if (c < 0 || c >= state.k()) throw std::invalid_argument("cheat_hadamard_collapse: cheater out of range");
  }

  BroadcastState work = state;
  CollapseResult out;
  std::vector<int> measured;
  std::vector<Index> digits;
  for (int c : cheaters) {
    PartyRole role{c, Honesty::cheating, {}};
    for (int f : state.factors_of(c)) {
      if (hadamard_first) role.schedule.push_back({Action::Kind::unitary, 0, hadamard(), {f}});
      role.schedule.push_back({Action::Kind::measure, 0, Matrix(), {f}});
    }
    const ScheduleOutcome so = apply_schedule(work, role, 0, rng);
    const auto owned = state.factors_of(c);
    for (std::size_t n = 0; n < owned.size(); ++n) {
      measured.push_back(owned[n]);
      digits.push_back(so.measurements[n][0]);
      out.outcomes.push_back(static_cast<int>(so.measurements[n][0]));
      out.parity ^= out.outcomes.back();
    }
  }
  StateVector rest = slice_factors(work.state(), measured, digits);
  out.honest_state = StateVector(rest.layout(), rest.amplitudes() / rest.norm());
  return out;
}

}  // namespace qcf::broadcast
