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

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <sstream>
#include <thread>

#include "qcf/broadcast/broadcast.hpp"
#include "qcf/cli/cli.hpp"
#include "qcf/core/random.hpp"
#include "qcf/lowerbound/json.hpp"
#include "qcf/multiparty/committee.hpp"
#include "qcf/multiparty/tournament.hpp"
#include "qcf/penalty/penalty.hpp"
#include "qcf/sdp/solver.hpp"

namespace qcf::cli {

namespace {

// Results come back in parameter order whatever order the workers finish in.
template <class P, class F>
std::vector<Json> map_ordered(const std::vector<P>& params, int jobs, F f) {
  std::vector<Json> out(params.size());
  std::vector<std::exception_ptr> errors(params.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < params.size(); i = next++) {
      try {
        out[i] = f(params[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t n = std::min<std::size_t>(std::max(jobs, 1), params.size());
  if (n <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < n; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

double stderr_of(double p, long long runs) { return std::sqrt(p * (1.0 - p) / static_cast<double>(runs)); }

Json nan_to_null(double x) { return std::isnan(x) ? Json(nullptr) : Json(x); }

std::string fmt(double x) {
  std::ostringstream s;
  s.precision(17);
  s << x;
  return s.str();
}

}  // namespace

// ---- penalty ----

Output cmd_penalty(const RunConfig& config, const std::vector<PenaltyParams>& params) {
  Output out;
  out.columns = {"v",      "bob_bound", "alice_primal", "alice_dual_bound", "lambda", "m0",     "m1",
                 "m2",     "duality_gap", "certificate_feasible", "status", "iterations", "seed", "version"};
  out.records = map_ordered(params, config.jobs, [&](const PenaltyParams& p) {
    if (!(p.v >= 4.0)) throw CommandError(exit_invalid_arguments, "penalty: v must be at least 4, got " + fmt(p.v));
    if (!(p.tolerance > 0.0)) throw CommandError(exit_invalid_arguments, "penalty: tolerance must be positive");
    if (p.max_iterations < 1) throw CommandError(exit_invalid_arguments, "penalty: max-iterations must be positive");
    const penalty::PenaltyGame game(p.v);
    const sdp::Problem problem = penalty::alice_attack_sdp(game);
    sdp::Options options;
    options.gap_tol = p.tolerance;
    options.max_iterations = p.max_iterations;
    const sdp::Solution sol = sdp::solve(problem, options);
    if (!sol.converged())
      throw CommandError(exit_non_convergence, "penalty: solver did not converge at v=" + fmt(p.v) + " (" +
                                                   sdp::to_string(sol.status) + " after " +
                                                   std::to_string(sol.iterations) + " iterations)");
    const auto cp = penalty::certificate_parameters(game);
    const auto report = penalty::check_certificate(game, cp);
    const auto bob = penalty::bob_attack(game);
    const double gap = sdp::duality_gap(problem, sol, penalty::paper_dual_certificate(game));

    Json r = make_record(config, {{"v", p.v}, {"tolerance", p.tolerance}, {"max_iterations", p.max_iterations}});
    r["v"] = p.v;
    r["bob_bound"] = bob.expected_win;
    r["bob_simulated"] = bob.simulated_win;
    r["alice_primal"] = sol.primal_value;
    r["alice_dual_bound"] = cp.payoff_bound;
    r["alice_proof_bound"] = penalty::expected_win_bound(p.v).alice_proof;
    r["lambda"] = cp.lambda;
    r["m0"] = cp.m0;
    r["m1"] = cp.m1;
    r["m2"] = cp.m2;
    r["duality_gap"] = gap;
    r["certificate_feasible"] = report.feasible;
    r["status"] = sdp::to_string(sol.status);
    r["iterations"] = sol.iterations;
    return r;
  });
  return out;
}

// ---- tournament ----

namespace {

// One committee selection followed by the bracket on the survivors, seen
// from the first honest committee member; everyone else is in the coalition.
bool pipeline_fixed(const multiparty::LightestBinConfig& bins, const multiparty::AdversaryModel& adversary, Rng rng) {
  const auto sel = multiparty::lightest_bin_select(bins, rng);
  if (!sel.honest_present) return true;
  const auto m = static_cast<long long>(sel.committee.size());
  if (m < 2) return false;
  long long pos = 0;
  while (sel.committee[pos] >= bins.g) ++pos;
  multiparty::TournamentConfig tc;
  tc.k = m;
  return multiparty::simulate_tournament(tc, pos, adversary, rng.split(1), 1).fixed == 1;
}

}  // namespace

Output cmd_tournament(const RunConfig& config, const std::vector<TournamentParams>& params) {
  Output out;
  out.columns = {"k",         "g",          "analytic_bound", "mc_estimate", "stderr", "runs",
                 "seed",      "adversary",  "bias_bound",     "exact_fix_probability", "c",
                 "threshold", "k_prime",    "version"};
  out.records = map_ordered(params, config.jobs, [&](const TournamentParams& p) {
    if (p.k < 2) throw CommandError(exit_invalid_arguments, "tournament: k must be at least 2");
    if (p.g < 1 || p.g > p.k) throw CommandError(exit_invalid_arguments, "tournament: g must lie in [1, k]");
    if (p.runs < 1) throw CommandError(exit_invalid_arguments, "tournament: runs must be positive");
    if (p.bins < 2) throw CommandError(exit_invalid_arguments, "tournament: bins must be at least 2");
    if (!(p.threshold_factor > 0.0))
      throw CommandError(exit_invalid_arguments, "tournament: threshold-factor must be positive");
    const auto adversary = multiparty::adversary_preset(p.adversary);
    const Rng rng(config.seed);

    Json r = make_record(config, {{"k", p.k},
                                  {"g", p.g},
                                  {"runs", p.runs},
                                  {"adversary", p.adversary},
                                  {"bins", p.bins},
                                  {"threshold_factor", p.threshold_factor},
                                  {"bin_strategy", p.bin_strategy}});
    r["k"] = p.k;
    r["g"] = p.g;
    r["runs"] = p.runs;
    r["adversary"] = p.adversary;
    if (p.g == 1) {
      multiparty::TournamentConfig tc;
      tc.k = p.k;
      const auto rep = multiparty::simulate_tournament(tc, 0, adversary, rng, p.runs);
      r["path"] = "tournament";
      r["analytic_bound"] = nan_to_null(1.0 - rep.analytic_one_minus_p);
      r["bias_bound"] = nan_to_null(rep.bias_bound);
      r["mc_estimate"] = rep.monte_carlo_estimate;
      r["stderr"] = rep.stderr_;
      r["exact_fix_probability"] = rep.exact_fix_probability;
      r["fixed"] = rep.fixed;
      r["aborted"] = rep.aborted;
      r["within_bound"] = rep.within_bound(4.0);
      r["threshold"] = nullptr;
      r["k_prime"] = p.k;
      const bool pow2 = p.k >= 8 && (p.k & (p.k - 1)) == 0;
      r["c"] = pow2 ? Json(multiparty::tournament_bound(p.k).c) : Json(nullptr);
    } else {
      const auto cb = multiparty::combined_bias(p.k, p.g, p.threshold_factor);
      multiparty::LightestBinConfig bins;
      bins.k = p.k;
      bins.g = p.g;
      bins.bins = p.bins;
      bins.threshold = cb.threshold;
      bins.strategy = multiparty::bin_strategy_from_string(p.bin_strategy);
      long long fixed = 0;
      if (cb.reduced) {
        for (long long run = 0; run < p.runs; ++run) fixed += pipeline_fixed(bins, adversary, rng.split(run));
      } else {
        multiparty::TournamentConfig tc;
        tc.k = p.k;
        fixed = multiparty::simulate_tournament(tc, 0, adversary, rng, p.runs).fixed;
      }
      const double est = static_cast<double>(fixed) / static_cast<double>(p.runs);
      const double bound = 1.0 - cb.honest_presence * cb.one_minus_p;
      r["path"] = "combined";
      r["analytic_bound"] = bound;
      r["bias_bound"] = cb.bias;
      r["mc_estimate"] = est;
      r["stderr"] = stderr_of(est, p.runs);
      r["exact_fix_probability"] = nullptr;
      r["fixed"] = fixed;
      r["within_bound"] = est <= bound + 4.0 * stderr_of(est, p.runs);
      r["threshold"] = cb.threshold;
      r["k_prime"] = cb.k_prime;
      r["reduced"] = cb.reduced;
      r["honest_presence"] = cb.honest_presence;
      r["c"] = multiparty::tournament_bound(cb.k_prime).c;
    }
    return r;
  });
  return out;
}

// ---- lowerbound ----

namespace {

using lowerbound::AnyProtocol;
using lowerbound::KPartyProtocol;
using lowerbound::TwoPartyProtocol;

std::string protocol_name(const AnyProtocol& p) {
  return std::visit([](const auto& q) { return q.name; }, p);
}

lowerbound::ValidationReport validate_any(const AnyProtocol& p) {
  return std::visit([](const auto& q) { return lowerbound::validate_protocol(q); }, p);
}

std::string diagnostics(const std::string& file, const lowerbound::ValidationReport& v) {
  std::ostringstream s;
  s << file << ": invalid protocol";
  for (const auto& c : v.conditions)
    if (!c.holds) s << "\n  " << c.name << ": residual " << fmt(c.residual);
  return s.str();
}

// Solver failures surface as std::runtime_error; keep format errors apart.
template <class F>
auto solving(F f) {
  try {
    return f();
  } catch (const JsonFormatError&) {
    throw;
  } catch (const CommandError&) {
    throw;
  } catch (const std::runtime_error& e) {
    throw CommandError(exit_non_convergence, e.what());
  }
}

const TwoPartyProtocol& two_party(const AnyProtocol& p, const std::string& verb) {
  if (!std::holds_alternative<TwoPartyProtocol>(p))
    throw CommandError(exit_invalid_arguments, "lowerbound " + verb + ": needs a two-party protocol");
  return std::get<TwoPartyProtocol>(p);
}

Json analytic_record(const RunConfig& config, const LowerBoundParams& p) {
  if (p.k < 1) throw CommandError(exit_invalid_arguments, "lowerbound: k must be positive");
  if (p.g < 1 || p.g > p.k) throw CommandError(exit_invalid_arguments, "lowerbound: g must lie in [1, k]");
  const auto b = lowerbound::kparty_bias_bound(p.k);
  const auto gb = lowerbound::group_players(p.k, p.g);
  Json r = make_record(config, {{"analytic", true}, {"k", p.k}, {"g", p.g}});
  r["k"] = p.k;
  r["g"] = p.g;
  r["q_min"] = b.q_min;
  r["bias_bound"] = b.bias_bound;
  r["one_minus_q_min"] = 1.0 - b.q_min;
  r["expansion"] = b.expansion;
  r["expansion_holds"] = b.expansion_holds;
  r["k_prime"] = gb.k_prime;
  r["group_q_min"] = gb.bound.q_min;
  r["group_bias_bound"] = gb.bound.bias_bound;
  return r;
}

}  // namespace

Output cmd_lowerbound(const RunConfig& config, const std::vector<LowerBoundParams>& params) {
  const std::string verb = config.verb.empty() ? "report" : config.verb;
  Output out;
  if (verb == "kparty-bound" || (!params.empty() && params.front().analytic)) {
    out.columns = {"k", "g", "q_min", "bias_bound", "one_minus_q_min", "expansion_holds", "k_prime",
                   "group_q_min", "group_bias_bound", "seed", "version"};
    out.records = map_ordered(params, config.jobs, [&](const LowerBoundParams& p) { return analytic_record(config, p); });
    return out;
  }
  if (verb == "validate") {
    out.columns = {"protocol", "type", "valid", "p0", "p1", "p_abort", "failed", "seed", "version"};
  } else if (verb == "cheat") {
    out.columns = {"protocol", "cheater", "target", "probability", "dual_bound", "status", "iterations", "seed",
                   "version"};
  } else if (verb == "kitaev-check") {
    out.columns = {"protocol", "p_1star", "p_star1", "product", "p1", "pass", "balanced", "max_pass", "seed",
                   "version"};
  } else if (verb == "report") {
    out.columns = {"protocol", "type",    "valid",   "p0",   "p1",       "p_abort", "p_1star",
                   "p_star1",  "product", "pass",    "balanced", "max_pass", "seed", "version"};
  } else {
    throw CommandError(exit_invalid_arguments, "lowerbound: unknown verb '" + verb + "'");
  }

  std::vector<std::string> diags(params.size());
  std::vector<LowerBoundParams> indexed = params;
  std::vector<std::size_t> order(params.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  out.records = map_ordered(order, config.jobs, [&](std::size_t i) {
    const LowerBoundParams& p = indexed[i];
    const AnyProtocol proto = lowerbound::load_protocol(p.file);
    const auto v = validate_any(proto);
    const bool two = std::holds_alternative<TwoPartyProtocol>(proto);
    Json params_echo = {{"file", p.file}, {"tolerance", p.tolerance}};
    if (verb == "cheat") {
      params_echo["cheater"] = p.cheater;
      params_echo["target"] = p.target;
    }
    Json r = make_record(config, params_echo);
    r["protocol"] = protocol_name(proto);
    r["type"] = two ? "two-party" : "k-party";
    r["valid"] = v.valid;
    r["validation"] = lowerbound::to_json(v);
    if (!v.valid) {
      diags[i] = diagnostics(p.file, v);
      std::string failed;
      for (const auto& c : v.conditions)
        if (!c.holds) failed += (failed.empty() ? "" : ";") + c.name;
      r["failed"] = failed;
      return r;
    }
    r["failed"] = "";
    sdp::Options options;
    options.gap_tol = p.tolerance;
    if (verb == "validate") {
      r["p0"] = v.p0;
      r["p1"] = v.p1;
      r["p_abort"] = v.p_abort;
    } else if (verb == "cheat") {
      if (p.target != 0 && p.target != 1) throw CommandError(exit_invalid_arguments, "lowerbound cheat: target is 0 or 1");
      const auto side = lowerbound::side_from_string(p.cheater);
      const auto& tp = two_party(proto, verb);
      const auto c = solving([&] { return lowerbound::optimal_cheat(tp, side, p.target, options); });
      const Json cj = lowerbound::to_json(c);
      for (const auto& [key, value] : cj.items()) r[key] = value;
    } else if (verb == "kitaev-check" || two) {
      const auto& tp = two_party(proto, verb);
      const auto k = solving([&] { return lowerbound::kitaev_product_check(tp, options); });
      const Json kj = lowerbound::to_json(k);
      for (const auto& [key, value] : kj.items()) r[key] = value;
      r["max_cheat"] = std::max(k.p_1star, k.p_star1);
    } else {
      const auto& kp = std::get<KPartyProtocol>(proto);
      const auto k = solving([&] { return lowerbound::kparty_product_check(kp, options); });
      r["kparty"] = lowerbound::to_json(k);
      r["p1"] = v.p1;
      r["product"] = k.product[1];
      r["pass"] = k.pass;
      r["balanced"] = std::abs(v.p0 - v.p1) <= 1e-9;
    }
    if (verb == "report") {
      r["p0"] = v.p0;
      r["p1"] = v.p1;
      r["p_abort"] = v.p_abort;
    }
    return r;
  });
  for (const auto& d : diags) {
    if (d.empty()) continue;
    out.code = exit_malformed_input;
    out.diagnostics.push_back(d);
  }
  return out;
}

// ---- broadcast ----

Output cmd_broadcast(const RunConfig& config, const std::vector<BroadcastParams>& params) {
  const std::string& verb = config.verb;
  Output out;
  if (verb == "emulate") {
    out.columns = {"k", "fidelity", "uses", "expected_uses", "parity", "corrected", "seed", "version"};
  } else if (verb == "classical") {
    out.columns = {"k", "bit", "outcomes", "agree", "uses", "expected_uses", "seed", "version"};
  } else if (verb == "epr") {
    out.columns = {"k", "i", "j", "fidelity", "entanglement", "parity", "uses", "expected_uses", "seed", "version"};
  } else if (verb == "teleport") {
    out.columns = {"k", "i", "j", "fidelity", "uses", "expected_uses", "seed", "version"};
  } else {
    throw CommandError(exit_invalid_arguments, "broadcast: unknown verb '" + verb + "'");
  }
  out.records = map_ordered(params, config.jobs, [&](const BroadcastParams& p) {
    if (p.k < 2) throw CommandError(exit_invalid_arguments, "broadcast: k must be at least 2");
    if (p.k > 16) throw CommandError(exit_invalid_arguments, "broadcast: k is limited to 16 qubits");
    Rng rng(config.seed);
    Json echo = {{"k", p.k}};
    if (verb == "classical") echo["bit"] = p.bit;
    if (verb == "epr" || verb == "teleport") {
      echo["i"] = p.i;
      echo["j"] = p.j;
    }
    Json r = make_record(config, echo);
    r["k"] = p.k;
    if (verb == "emulate") {
      const StateVector q = random_state(Layout{2}, rng);
      const auto e = broadcast::emulate_broadcast_pairwise(q.amplitude(0), q.amplitude(1), p.k, rng);
      r["input"] = vector_to_json(q.amplitudes());
      r["fidelity"] = e.fidelity;
      r["uses"] = e.uses;
      r["expected_uses"] = 2 * (p.k - 1);
      r["parity"] = e.parity;
      r["corrected"] = e.corrected;
      r["r_bits"] = e.r_bits;
      r["transcript"] = broadcast::to_json(e.transcript);
    } else if (verb == "classical") {
      if (p.bit != 0 && p.bit != 1) throw CommandError(exit_invalid_arguments, "broadcast: bit is 0 or 1");
      const auto c = broadcast::classical_broadcast(p.bit, p.k, rng);
      std::string digits;
      for (int o : c.outcomes) digits += static_cast<char>('0' + o);
      r["bit"] = p.bit;
      r["outcomes"] = digits;
      r["agree"] = std::all_of(c.outcomes.begin(), c.outcomes.end(), [&](int o) { return o == p.bit; });
      r["uses"] = c.uses;
      r["expected_uses"] = 1;
      r["transcript"] = broadcast::to_json(c.transcript);
    } else {
      if (p.i < 0 || p.j < 0 || p.i >= p.k || p.j >= p.k || p.i == p.j)
        throw CommandError(exit_invalid_arguments, "broadcast: i and j must be distinct parties below k");
      r["i"] = p.i;
      r["j"] = p.j;
      if (verb == "epr") {
        const auto e = broadcast::establish_epr(p.i, p.j, p.k, rng);
        r["fidelity"] = e.fidelity;
        r["entanglement"] = e.entanglement;
        r["parity"] = e.parity;
        r["helper_outcomes"] = e.helper_outcomes;
        r["uses"] = e.uses;
        r["expected_uses"] = p.k - 1;
        r["transcript"] = broadcast::to_json(e.transcript);
      } else {
        const StateVector payload = random_state(Layout{2}, rng);
        const auto c = broadcast::simulate_quantum_channel_via_qbc(p.i, p.j, payload, p.k, rng);
        r["input"] = vector_to_json(payload.amplitudes());
        r["fidelity"] = c.fidelity;
        r["uses"] = c.uses;
        r["expected_uses"] = p.k + 1;
        r["transcript"] = broadcast::to_json(c.transcript);
      }
    }
    return r;
  });
  return out;
}

}  // namespace qcf::cli
