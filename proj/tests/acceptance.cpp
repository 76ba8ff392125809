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

// Acceptance run: one PASS/FAIL line per criterion, tolerances and time
// limits fixed below. Exit status is the number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "qcf/broadcast/broadcast.hpp"
#include "qcf/core/random.hpp"
#include "qcf/lowerbound/json.hpp"
#include "qcf/lowerbound/library.hpp"
#include "qcf/multiparty/committee.hpp"
#include "qcf/multiparty/tournament.hpp"
#include "qcf/penalty/penalty.hpp"
#include "qcf/sdp/solver.hpp"

using namespace qcf;

namespace {

constexpr double kHelstromTol = 1e-10;
constexpr double kDualPsdTol = 1e-9;
constexpr double kSandwichTol = 1e-6;
constexpr double kFidelityTol = 1e-12;
constexpr double kProductTol = 1e-10;
constexpr double kSigmas = 4.0;
constexpr double kKitaevTol = 1e-5;
constexpr double kCrossTol = 1e-4;
constexpr double kRootTol = 1e-12;

struct Outcome {
  bool pass = true;
  std::string detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (pass) detail = what;
      pass = false;
    }
  }
};

std::string fmt(const char* f, double x) {
  char buf[96];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

struct Criterion {
  int id;
  std::string name;
  double limit_s;
  std::function<Outcome()> body;
};

const std::string kSource = QCF_SOURCE_DIR;

// ---- 1 ----
Outcome helstrom_value() {
  Outcome o;
  double worst = 0.0;
  for (double v : {4.0, 9.0, 16.0, 25.0, 100.0}) {
    const auto b = penalty::bob_attack(penalty::PenaltyGame(v));
    const double want = 0.5 + 1.0 / std::sqrt(v);
    worst = std::max({worst, std::abs(b.simulated_win - want), std::abs(b.expected_win - want)});
  }
  o.require(worst <= kHelstromTol, "deviation " + fmt("%.3g", worst));
  if (o.pass) o.detail = "max deviation " + fmt("%.2e", worst);
  return o;
}

// ---- 2 ----
Outcome certificate() {
  Outcome o;
  double min_eig = INFINITY, max_slack = -INFINITY;
  for (int i = 0; i < 50; ++i) {
    const double v = 4.0 * std::pow(1e4 / 4.0, i / 49.0);
    const penalty::PenaltyGame game(v);
    const auto params = penalty::certificate_parameters(game);
    const auto rep = sdp::verify_dual(penalty::alice_attack_sdp(game), penalty::dual_certificate(params), kDualPsdTol);
    for (double e : rep.block_min_eigenvalues) min_eig = std::min(min_eig, e);
    o.require(rep.feasible, "infeasible at v=" + fmt("%.6g", v));
    const double cap = 2 * v + 1 + 1 / (4 * std::sqrt(v));
    max_slack = std::max(max_slack, params.lambda - cap);
    o.require(params.lambda <= cap, "lambda above 2v+1+1/(4 sqrt v) at v=" + fmt("%.6g", v));
  }
  o.require(min_eig >= -kDualPsdTol, "min eigenvalue " + fmt("%.3g", min_eig));
  if (o.pass) o.detail = "min eigenvalue " + fmt("%.2e", min_eig) + ", max lambda - cap " + fmt("%.2e", max_slack);
  return o;
}

// ---- 3 ----
Outcome sandwich() {
  Outcome o;
  std::string gaps;
  for (double v : {4.0, 9.0, 16.0}) {
    const penalty::PenaltyGame game(v);
    const auto problem = penalty::alice_attack_sdp(game);
    const auto sol = sdp::solve(problem);
    o.require(sol.converged(), "no convergence at v=" + fmt("%g", v));
    if (!sol.converged()) continue;
    const double upper = penalty::certificate_parameters(game).payoff_bound;
    o.require(sol.primal_value >= 0.5 - kSandwichTol && sol.primal_value <= upper + kSandwichTol,
              "primal " + fmt("%.9f", sol.primal_value) + " outside [0.5, " + fmt("%.9f", upper) + "]");
    const double gap = sdp::duality_gap(problem, sol, penalty::paper_dual_certificate(game));
    gaps += (gaps.empty() ? "" : ", ") + fmt("v=%g", v) + " gap " + fmt("%.2e", gap);
  }
  if (o.pass) o.detail = gaps;
  return o;
}

// ---- 4 ----
Outcome broadcasts() {
  Outcome o;
  Rng rng(2024);
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    const int k = 2 + t % 5;
    Rng r = rng.split(t);
    const StateVector q = random_state(Layout{2}, r);
    const auto e = broadcast::emulate_broadcast_pairwise(q.amplitude(0), q.amplitude(1), k, r);
    worst = std::max(worst, 1.0 - e.fidelity);
    o.require(e.uses == 2 * (k - 1), "fan-out uses at k=" + std::to_string(k));
    const auto c = broadcast::classical_broadcast(t % 2, k, r);
    o.require(c.uses == 1, "classical uses at k=" + std::to_string(k));
  }
  for (int seed = 0; seed < 100; ++seed) {
    const int k = 2 + seed % 7;
    Rng r = rng.split(1000 + seed);
    const int i = static_cast<int>(r.index(k));
    int j = static_cast<int>(r.index(k - 1));
    if (j >= i) ++j;
    const auto e = broadcast::establish_epr(i, j, k, r);
    worst = std::max(worst, 1.0 - e.fidelity);
    o.require(e.uses == k - 1, "epr uses at k=" + std::to_string(k));
  }
  for (int t = 0; t < 100; ++t) {
    const int k = 2 + t % 7;
    Rng r = rng.split(2000 + t);
    const StateVector payload = random_state(Layout{2}, r);
    const auto c = broadcast::simulate_quantum_channel_via_qbc(0, k - 1, payload, k, r);
    worst = std::max(worst, 1.0 - c.fidelity);
    o.require(c.uses == k + 1, "channel uses at k=" + std::to_string(k));
  }
  o.require(worst <= kFidelityTol, "fidelity deficit " + fmt("%.3g", worst));
  if (o.pass) o.detail = "max 1 - fidelity " + fmt("%.2e", worst);
  return o;
}

// ---- 5 ----
Outcome bracket_bound() {
  Outcome o;
  o.require(multiparty::tournament_bound(8).one_minus_pn == 1.0 / 64.0, "1 - P_3 != 1/64");
  const auto prod = multiparty::penalty_product_constant(kProductTol);
  o.require(prod.error_bound <= kProductTol, "product error bound " + fmt("%.3g", prod.error_bound));
  o.require(prod.value > 0.0, "product not positive");
  const double c = prod.value / 8.0;
  double min_scaled = INFINITY;
  for (int n = 3; n <= 20; ++n) {
    const long long k = 1LL << n;
    const double scaled = static_cast<double>(k) * multiparty::tournament_bound(k).one_minus_pn;
    min_scaled = std::min(min_scaled, scaled);
    o.require(scaled >= c, "k (1 - P_n) < c at n=" + std::to_string(n));
  }
  if (o.pass)
    o.detail = "c_inf " + fmt("%.12f", prod.value) + ", c " + fmt("%.6g", c) + ", min k(1-P_n) " + fmt("%.6g", min_scaled);
  return o;
}

// ---- 6 ----
Outcome tournament_mc() {
  Outcome o;
  double worst = -INFINITY;
  for (long long k : {8LL, 16LL, 32LL, 64LL}) {
    multiparty::TournamentConfig config;
    config.k = k;
    for (const auto& name : multiparty::adversary_presets()) {
      const auto adv = multiparty::adversary_preset(name);
      for (double v : config.penalty_schedule()) multiparty::check_admissible(adv.match(v), v);
      const auto rep = multiparty::simulate_tournament(config, 0, adv, Rng(static_cast<std::uint64_t>(k)), 100000);
      const double bound = 1.0 - rep.analytic_one_minus_p;
      worst = std::max(worst, (rep.monte_carlo_estimate - bound) / std::max(rep.stderr_, 1e-300));
      o.require(rep.within_bound(kSigmas), name + " exceeds the bound at k=" + std::to_string(k));
    }
  }
  if (o.pass) o.detail = "largest excess over bound " + fmt("%.2f", std::max(worst, -99.0)) + " sigma";
  return o;
}

// ---- 7 ----
Outcome lightest_bin() {
  Outcome o;
  std::string detail;
  for (auto strategy : {multiparty::BinStrategy::pile, multiparty::BinStrategy::split}) {
    multiparty::LightestBinConfig config;
    config.k = 256;
    config.g = 64;
    config.threshold = multiparty::committee_threshold(256, 64);
    config.strategy = strategy;
    const auto rep = multiparty::committee_experiment(config, Rng(7), 10000);
    o.require(rep.frequency >= 0.5 - kSigmas * rep.stderr_, multiparty::to_string(strategy) + " frequency " +
                                                                fmt("%.4f", rep.frequency));
    detail += (detail.empty() ? "" : ", ") + multiparty::to_string(strategy) + " " + fmt("%.4f", rep.frequency);
  }
  if (o.pass) o.detail = "threshold " + std::to_string(multiparty::committee_threshold(256, 64)) + ", " + detail;
  return o;
}

// ---- 8 ----
Outcome kitaev() {
  Outcome o;
  int suite = 0;
  bool penalty_seen = false;
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(kSource + "/data/protocols")) files.push_back(e.path());
  std::sort(files.begin(), files.end());
  for (const auto& path : files) {
    if (path.filename().string().rfind("invalid-", 0) == 0) continue;
    const auto any = lowerbound::load_protocol(path.string());
    if (!std::holds_alternative<lowerbound::TwoPartyProtocol>(any)) continue;
    const auto& p = std::get<lowerbound::TwoPartyProtocol>(any);
    if (!lowerbound::validate_protocol(p).valid) continue;
    const auto check = lowerbound::kitaev_product_check(p);
    o.require(check.product >= check.p1 - kKitaevTol, p.name + " product below p1");
    if (check.balanced)
      o.require(std::max(check.p_1star, check.p_star1) >= 1.0 / std::sqrt(2.0) - kKitaevTol, p.name + " max below 1/sqrt2");
    ++suite;
    if (p.name.rfind("penalty-v", 0) == 0) {
      penalty_seen = true;
      const double v = std::stod(p.name.substr(9));
      const double helstrom = penalty::bob_attack(penalty::PenaltyGame(v)).expected_win;
      o.require(std::abs(check.p_star1 - helstrom) <= kCrossTol,
                p.name + " Bob " + fmt("%.6f", check.p_star1) + " vs Helstrom " + fmt("%.6f", helstrom));
    }
  }
  o.require(suite >= 3, "fewer than 3 validated protocols");
  o.require(penalty_seen, "no encoded penalty protocol");
  if (o.pass) o.detail = std::to_string(suite) + " validated two-party protocols";
  return o;
}

// ---- 9 ----
Outcome kparty() {
  Outcome o;
  double worst = 0.0;
  for (long long k = 1; k <= 64; ++k) {
    const auto b = lowerbound::kparty_bias_bound(k);
    worst = std::max(worst, std::abs(std::pow(b.q_min, static_cast<double>(k)) - 0.5));
    o.require(b.q_min >= 1.0 - std::log(2.0) / static_cast<double>(k), "q_min below 1 - ln2/k at k=" + std::to_string(k));
  }
  o.require(worst <= kRootTol, "q_min^k - 1/2 " + fmt("%.3g", worst));
  for (const auto& p : {lowerbound::party_announces(), lowerbound::kparty_by_name("round-robin-xor")}) {
    if (p.parties() != 3) continue;
    const auto check = lowerbound::kparty_product_check(p);
    for (int b = 0; b < 2; ++b) {
      double prod = 1.0;
      for (double x : check.p[b]) prod *= x;
      o.require(prod >= check.honest[b] - kKitaevTol, p.name + " product below p_" + std::to_string(b));
    }
  }
  if (o.pass) o.detail = "max |q^k - 1/2| " + fmt("%.2e", worst);
  return o;
}

// ---- 10 ----
Outcome tightness(bool upper_ok, bool lower_ok) {
  Outcome o;
  o.require(upper_ok, "criteria 5-6 failed");
  o.require(lower_ok, "criterion 9 failed");
  // lower side: some coalition of k - g reaches bias 1/2 - (1 - q_min(ceil(k/g))) >= 1/2 - ln2 g / k
  double worst_lower = 0.0;
  double c_prime = INFINITY;
  for (int n = 3; n <= 20; ++n) {
    const long long k = 1LL << n;
    for (long long g = 1; g <= k / 2; g *= 2) {
      const auto gb = lowerbound::group_players(k, g);
      const double scaled = (0.5 - gb.bound.bias_bound) * static_cast<double>(k) / static_cast<double>(g);
      worst_lower = std::max(worst_lower, scaled);
      o.require(scaled <= std::log(2.0) + 1e-12, "group bound above ln2 g/k at k=" + std::to_string(k));
      const auto cb = multiparty::combined_bias(k, g);
      c_prime = std::min(c_prime, (0.5 - cb.bias) * static_cast<double>(k) / static_cast<double>(g));
    }
  }
  o.require(c_prime > 0.0, "upper constant not positive");
  if (o.pass)
    o.detail = "1/2 - " + fmt("%.3g", c_prime) + " g/k >= bias >= 1/2 - " + fmt("%.3g", worst_lower) + " g/k";
  return o;
}

}  // namespace

int main() {
  std::vector<Criterion> criteria = {
      Criterion{1, "Helstrom attack value", 1.0, helstrom_value},
      Criterion{2, "closed-form dual certificate", 5.0, certificate},
      Criterion{3, "Alice SDP sandwich", 30.0, sandwich},
      Criterion{4, "broadcast emulations", 10.0, broadcasts},
      Criterion{5, "tournament bound", 1.0, bracket_bound},
      Criterion{6, "tournament Monte Carlo", 60.0, tournament_mc},
      Criterion{7, "lightest-bin committee", 30.0, lightest_bin},
      Criterion{8, "Kitaev product check", 120.0, kitaev},
      Criterion{9, "k-party bound", 120.0, kparty},
  };
  std::vector<bool> passed(11, false);
  int failures = 0;
  auto report = [&](int id, const std::string& name, double limit, Outcome o, double secs) {
    if (secs > limit) o.require(false, "took " + fmt("%.2f", secs) + " s, limit " + fmt("%g", limit) + " s");
    passed[id] = o.pass;
    failures += !o.pass;
    std::printf("%s [%2d] %-30s %7.2f s  %s\n", o.pass ? "PASS" : "FAIL", id, name.c_str(), secs, o.detail.c_str());
    std::fflush(stdout);
  };
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.body();
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    report(c.id, c.name, c.limit_s, o, secs);
  }
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o = tightness(passed[5] && passed[6], passed[9]);
  report(10, "tightness conjunction", 120.0, o,
         std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  return failures;
}
