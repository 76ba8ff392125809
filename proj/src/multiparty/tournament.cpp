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

#include "qcf/multiparty/tournament.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace qcf::multiparty {

namespace {

bool is_power_of_two(long long k) { return k > 0 && (k & (k - 1)) == 0; }

int ceil_log2(long long k) {
  int n = 0;
  while ((1LL << n) < k) ++n;
  return n;
}

MatchModel honest_match(double) { return {0.5, 0.5, 0.0}; }

MatchModel greedy_match(double v) {
  double q = std::min(1.0, max_expected_win(v));
  return {1.0 - q, q, 0.0};
}

MatchModel reckless_match(double v) {
  const double pc = 0.02;
  double pl = std::min(1.0 - pc, max_expected_win(v) + v * pc);
  return {1.0 - pc - pl, pl, pc};
}

MatchModel kamikaze_match(double) { return {0.0, 0.0, 1.0}; }

// One entry per bracket round for the honest player: the penalty if it is a
// penalty round (NaN in the final phase), or a bye.
struct PathRound {
  bool bye = false;
  bool final_phase = false;
  double v = 0.0;
};

std::vector<PathRound> honest_path(const TournamentConfig& config, long long honest_id) {
  config.validate();
  if (honest_id < 0 || honest_id >= config.k) throw std::out_of_range("honest_id outside [0, k)");
  const int n = config.rounds();
  std::vector<PathRound> path;
  long long m = config.k;
  long long p = honest_id;
  for (int i = 1; m > 1; ++i) {
    PathRound r;
    r.final_phase = m <= config.final_players;
    r.v = std::ldexp(1.0, n - i) - 1.0;
    r.bye = (m % 2 == 1) && p == m - 1;
    path.push_back(r);
    p /= 2;
    m = (m + 1) / 2;
  }
  return path;
}

}  // namespace

double max_expected_win(double v) {
  if (!(v > 0.0) || !std::isfinite(v)) throw std::invalid_argument("penalty must be positive and finite");
  return 0.5 + 1.0 / std::sqrt(v);
}

double recurrence_step(double p_prev, double q) {
  if (!(p_prev >= 0.0 && p_prev <= 1.0)) throw std::out_of_range("P_prev outside [0, 1]");
  if (!(q >= 0.0 && q <= 1.0)) throw std::out_of_range("Q outside [0, 1]");
  return 1.0 - (1.0 - p_prev) * (1.0 - q);
}

InfiniteProduct penalty_product_constant(double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  // x_j = 2/sqrt(2^j - 1) <= 2 sqrt2 2^(-j/2); the tail product lies in [1 - sum_{j>J} x_j, 1].
  const double ratio = 1.0 / std::sqrt(2.0);
  InfiniteProduct out;
  double value = 1.0;
  for (int j = 3; j < 1000; ++j) {
    value *= 1.0 - 2.0 / std::sqrt(std::ldexp(1.0, j) - 1.0);
    ++out.terms;
    double tail = 2.0 * std::sqrt(2.0) * std::pow(ratio, j + 1) / (1.0 - ratio);
    if (value * tail <= tol) {
      out.value = value;
      out.error_bound = value * tail;
      return out;
    }
  }
  throw std::runtime_error("penalty product did not reach the requested tolerance");
}

TournamentBound tournament_bound(long long k) {
  if (!is_power_of_two(k) || k < 8) throw std::invalid_argument("k must be a power of two >= 8");
  TournamentBound b;
  b.n = ceil_log2(k);
  double one_minus = 1.0 / 64.0;
  for (int j = 4; j <= b.n; ++j) {
    double q = max_expected_win(std::ldexp(1.0, j - 1) - 1.0);
    one_minus = 1.0 - recurrence_step(1.0 - one_minus, q);
  }
  b.one_minus_pn = one_minus;
  b.bias = 0.5 - one_minus;
  b.c_inf = penalty_product_constant().value;
  b.c = b.c_inf / 8.0;
  b.chained_lower = b.c / static_cast<double>(k);
  return b;
}

NaiveBound naive_tournament_bound(long long k) {
  if (k < 2) throw std::invalid_argument("k must be at least 2");
  NaiveBound b;
  double e = std::ceil(std::log2(static_cast<double>(k)) - 1.0);
  b.exponent = static_cast<int>(e);
  double reach = std::pow(1.0 - 1.0 / std::sqrt(2.0), b.exponent);
  b.fix_probability = 1.0 - 0.25 * reach;
  b.bias = 0.5 - 0.25 * reach;
  b.within_power_law = b.fix_probability <= 1.0 - 1.0 / (4.0 * std::pow(static_cast<double>(k), 1.78));
  return b;
}

void check_admissible(const MatchModel& m, double v) {
  const double eps = 1e-12;
  for (double p : {m.p_win, m.p_lose, m.p_catch}) {
    if (!(p >= -eps && p <= 1.0 + eps)) throw std::invalid_argument("match probabilities must lie in [0, 1]");
  }
  if (std::abs(m.p_win + m.p_lose + m.p_catch - 1.0) > 1e-9) {
    throw std::invalid_argument("match probabilities must sum to 1");
  }
  if (m.p_lose - v * m.p_catch > max_expected_win(v) + eps) {
    throw std::invalid_argument("adversary violates p_l - v p_c <= Q_v at v = " + std::to_string(v));
  }
}

AdversaryModel adversary_preset(const std::string& name) {
  if (name == "honest") return {name, 0.5, &honest_match};
  if (name == "greedy") return {name, 0.75, &greedy_match};
  if (name == "reckless") return {name, 0.75, &reckless_match};
  if (name == "kamikaze") return {name, 0.75, &kamikaze_match};
  throw std::invalid_argument("unknown adversary preset: " + name);
}

std::vector<std::string> adversary_presets() { return {"honest", "greedy", "reckless", "kamikaze"}; }

int TournamentConfig::rounds() const { return ceil_log2(k); }

std::vector<double> TournamentConfig::penalty_schedule() const {
  validate();
  std::vector<double> out;
  const int n = rounds();
  long long m = k;
  for (int i = 1; m > final_players; ++i) {
    out.push_back(std::ldexp(1.0, n - i) - 1.0);
    m = (m + 1) / 2;
  }
  return out;
}

void TournamentConfig::validate() const {
  if (k < 2) throw std::invalid_argument("tournament needs at least 2 players");
  if (k > (1LL << 40)) throw std::invalid_argument("tournament too large");
  if (final_players < 2) throw std::invalid_argument("final phase needs at least 2 players");
}

bool BiasReport::within_bound(double sigmas) const {
  if (std::isnan(analytic_one_minus_p)) return true;
  return monte_carlo_estimate <= 1.0 - analytic_one_minus_p + sigmas * stderr_;
}

double exact_fix_probability(const TournamentConfig& config, long long honest_id, const AdversaryModel& adversary) {
  double alive = 1.0;
  double fixed = 0.0;
  for (const PathRound& r : honest_path(config, honest_id)) {
    if (r.bye) continue;
    if (r.final_phase) {
      fixed += alive * adversary.final_cheat;
      alive *= 1.0 - adversary.final_cheat;
    } else {
      MatchModel m = adversary.match(r.v);
      check_admissible(m, r.v);
      fixed += alive * m.p_lose;
      alive *= m.p_win;
    }
  }
  return fixed;
}

BiasReport simulate_tournament(const TournamentConfig& config, long long honest_id, const AdversaryModel& adversary,
                               const Rng& rng, long long runs) {
  if (runs <= 0) throw std::invalid_argument("runs must be positive");
  if (adversary.match == nullptr) throw std::invalid_argument("adversary has no match model");
  if (!(adversary.final_cheat >= 0.0 && adversary.final_cheat <= 1.0)) {
    throw std::invalid_argument("final-phase cheat probability outside [0, 1]");
  }
  std::vector<PathRound> path = honest_path(config, honest_id);
  std::vector<MatchModel> models(path.size());
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (path[i].bye || path[i].final_phase) continue;
    models[i] = adversary.match(path[i].v);
    check_admissible(models[i], path[i].v);
  }

  BiasReport report;
  report.k = config.k;
  report.honest_id = honest_id;
  report.adversary = adversary.name;
  report.runs = runs;
  report.exact_fix_probability = exact_fix_probability(config, honest_id, adversary);
  if (is_power_of_two(config.k) && config.k >= 8 && config.final_players == 8) {
    TournamentBound b = tournament_bound(config.k);
    report.analytic_one_minus_p = b.one_minus_pn;
    report.bias_bound = b.bias;
  } else {
    report.analytic_one_minus_p = std::numeric_limits<double>::quiet_NaN();
    report.bias_bound = std::numeric_limits<double>::quiet_NaN();
  }

  for (long long run = 0; run < runs; ++run) {
    Rng r = rng.split(static_cast<std::uint64_t>(run));
    for (std::size_t i = 0; i < path.size(); ++i) {
      if (path[i].bye) continue;
      double u = r.uniform();
      if (path[i].final_phase) {
        if (u < adversary.final_cheat) {
          ++report.fixed;
          break;
        }
        continue;
      }
      const MatchModel& m = models[i];
      if (u < m.p_lose) {
        ++report.fixed;
        break;
      }
      if (u < m.p_lose + m.p_catch) {
        ++report.aborted;
        break;
      }
    }
  }
  double p = static_cast<double>(report.fixed) / static_cast<double>(runs);
  report.monte_carlo_estimate = p;
  report.stderr_ = std::sqrt(p * (1.0 - p) / static_cast<double>(runs));
  return report;
}

}  // namespace qcf::multiparty
