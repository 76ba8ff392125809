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

#ifndef QCF_MULTIPARTY_TOURNAMENT_HPP
#define QCF_MULTIPARTY_TOURNAMENT_HPP

#include <string>
#include <vector>

#include "qcf/core/rng.hpp"

namespace qcf::multiparty {

/// Q_v = 1/2 + 1/sqrt(v): the largest expected win against an honest
/// opponent in the two-party game with penalty v.
double max_expected_win(double v);

/// 1 - (1 - p_prev)(1 - q). Throws std::out_of_range outside [0, 1].
double recurrence_step(double p_prev, double q);

struct TournamentBound {
  int n = 0;                    // k = 2^n
  double one_minus_pn = 0.0;    // (1/64) prod_{j=4}^{n} (1 - Q_{2^{j-1}-1})
  double bias = 0.0;            // 1/2 - one_minus_pn
  double chained_lower = 0.0;   // c_inf / (8 k)
  double c_inf = 0.0;           // prod_{j>=3} (1 - 2/sqrt(2^j - 1))
  double c = 0.0;               // c_inf / 8, so one_minus_pn >= c / k
};

/// k must be a power of two >= 8 (std::invalid_argument otherwise).
TournamentBound tournament_bound(long long k);

struct InfiniteProduct {
  double value = 0.0;
  double error_bound = 0.0;  // |value - true product| <= error_bound
  int terms = 0;
};

/// prod_{j>=3} (1 - 2/sqrt(2^j - 1)), truncated once the tail bound drops below `tol`.
InfiniteProduct penalty_product_constant(double tol = 1e-10);

struct NaiveBound {
  int exponent = 0;          // ceil(log2(k) - 1)
  double fix_probability = 0.0;
  double bias = 0.0;         // 1/2 - (1/4)(1 - 1/sqrt2)^exponent
  bool within_power_law = false;  // fix_probability <= 1 - 1/(4 k^1.78)
};

NaiveBound naive_tournament_bound(long long k);

/// Outcome probabilities of one honest-vs-cheater match, seen from the honest player.
struct MatchModel {
  double p_win = 0.0;
  double p_lose = 0.0;
  double p_catch = 0.0;
};

/// Checks the simplex and p_lose - v p_catch <= Q_v; throws std::invalid_argument.
void check_admissible(const MatchModel& m, double v);

/// Cheater behavior per penalty round (as a function of v) plus the final phase.
struct AdversaryModel {
  std::string name;
  double final_cheat = 0.75;  // per-round probability the cheater wins in the final phase
  MatchModel (*match)(double v) = nullptr;
};

/// Presets: "honest", "greedy", "reckless", "kamikaze".
AdversaryModel adversary_preset(const std::string& name);
std::vector<std::string> adversary_presets();

struct TournamentConfig {
  long long k = 8;
  int final_players = 8;  // the final phase starts once at most this many players remain
  /// ceil(log2 k)
  int rounds() const;
  /// Round i (1-based) of an n-round bracket uses penalty 2^(n-i) - 1; one entry per penalty round.
  std::vector<double> penalty_schedule() const;
  void validate() const;
};

struct BiasReport {
  long long k = 0;
  long long g = 1;
  long long honest_id = 0;
  std::string adversary;
  double analytic_one_minus_p = 0.0;  // NaN unless k is a power of two >= 8
  double bias_bound = 0.0;            // 1/2 - analytic_one_minus_p
  double exact_fix_probability = 0.0;
  long long runs = 0;
  long long fixed = 0;
  long long aborted = 0;
  double monte_carlo_estimate = 0.0;  // empirical fix probability
  double stderr_ = 0.0;
  /// monte_carlo_estimate <= 1 - analytic_one_minus_p + sigmas * stderr_ (true when no bound applies).
  bool within_bound(double sigmas = 4.0) const;
};

/*
 * Monte Carlo of the elimination bracket from the honest player's point of
 * view; every other player is in the coalition. A lost match fixes the coin,
 * a caught cheater aborts it. Run r draws from rng.split(r).
 */
BiasReport simulate_tournament(const TournamentConfig& config, long long honest_id, const AdversaryModel& adversary,
                               const Rng& rng, long long runs);

/// Closed-form fix probability of `adversary` for honest_id's bracket path.
double exact_fix_probability(const TournamentConfig& config, long long honest_id, const AdversaryModel& adversary);

}  // namespace qcf::multiparty

#endif  // QCF_MULTIPARTY_TOURNAMENT_HPP
