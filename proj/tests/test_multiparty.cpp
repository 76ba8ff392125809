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

#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "qcf/multiparty/committee.hpp"
#include "qcf/multiparty/tournament.hpp"

using namespace qcf;
using namespace qcf::multiparty;

namespace {

// long double reference product, far past the point where terms matter
long double reference_constant() {
  long double p = 1.0L;
  for (int j = 3; j <= 400; ++j) p *= 1.0L - 2.0L / std::sqrt(std::ldexp(1.0L, j) - 1.0L);
  return p;
}

double oracle_one_minus(int n) {
  double r = 1.0 / 64.0;
  for (int j = 3; j <= n - 1; ++j) r *= 0.5 - 1.0 / std::sqrt(std::pow(2.0, j) - 1.0);
  return r;
}

}  // namespace

TEST_CASE("recurrence step") {
  double q7 = 0.5 + 1.0 / std::sqrt(7.0);
  CHECK(recurrence_step(63.0 / 64.0, q7) == doctest::Approx(1.0 - (0.5 - 1.0 / std::sqrt(7.0)) / 64.0).epsilon(1e-14));
  CHECK(recurrence_step(0.3, 0.0) == doctest::Approx(0.3));
  CHECK(recurrence_step(0.3, 1.0) == 1.0);
  CHECK_THROWS_AS(recurrence_step(-0.1, 0.5), std::out_of_range);
  CHECK_THROWS_AS(recurrence_step(0.5, 1.1), std::out_of_range);
  for (double p = 0.0; p <= 1.0; p += 0.1) {
    for (double q = 0.0; q <= 0.9; q += 0.1) {
      CHECK(recurrence_step(p, q + 0.1) >= recurrence_step(p, q));
      if (p + 0.1 <= 1.0) CHECK(recurrence_step(p + 0.1, q) >= recurrence_step(p, q));
    }
  }
}

TEST_CASE("tournament bound") {
  TournamentBound b8 = tournament_bound(8);
  CHECK(b8.one_minus_pn == doctest::Approx(1.0 / 64.0).epsilon(1e-15));
  CHECK(b8.bias == doctest::Approx(0.5 - 1.0 / 64.0));
  for (int n = 3; n <= 20; ++n) {
    TournamentBound b = tournament_bound(1LL << n);
    CHECK(b.one_minus_pn == doctest::Approx(oracle_one_minus(n)).epsilon(1e-12));
    CHECK(b.one_minus_pn >= b.chained_lower);
    CHECK(b.bias <= 0.5 - b.c / static_cast<double>(1LL << n));
  }
  CHECK_THROWS_AS(tournament_bound(4), std::invalid_argument);
  CHECK_THROWS_AS(tournament_bound(24), std::invalid_argument);
}

TEST_CASE("infinite product constant") {
  InfiniteProduct c = penalty_product_constant(1e-10);
  CHECK(c.value > 0.0);
  CHECK(c.error_bound <= 1e-10);
  CHECK(std::abs(static_cast<long double>(c.value) - reference_constant()) <= 1e-10L);
  CHECK(tournament_bound(1024).c_inf == c.value);
}

TEST_CASE("naive tournament") {
  NaiveBound two = naive_tournament_bound(2);
  CHECK(two.exponent == 0);
  CHECK(two.fix_probability == doctest::Approx(0.75));
  CHECK(two.bias == doctest::Approx(0.25));
  NaiveBound big = naive_tournament_bound(1024);
  CHECK(big.exponent == 9);
  CHECK(big.within_power_law);
  CHECK(big.fix_probability <= 1.0 - 1.0 / (4.0 * std::pow(1024.0, 1.78)));
  // the honest player's edge 1/2 - bias shrinks as k grows
  double prev = 0.0;
  for (long long k = 2; k <= 1 << 16; ++k) {
    NaiveBound b = naive_tournament_bound(k);
    CHECK(b.within_power_law);
    CHECK(b.bias >= prev);
    prev = b.bias;
    if (k > 64) k = k * 2 - 1;
  }
  CHECK_THROWS(naive_tournament_bound(1));
}

TEST_CASE("adversary admissibility") {
  double q7 = 0.5 + 1.0 / std::sqrt(7.0);
  CHECK_NOTHROW(check_admissible({1.1 - q7, q7 - 0.1, 0.0}, 7.0));
  CHECK_THROWS_AS(check_admissible({0.0, 1.0, 0.0}, 7.0), std::invalid_argument);
  CHECK_THROWS_AS(check_admissible({0.5, 0.6, 0.0}, 7.0), std::invalid_argument);
  CHECK_THROWS_AS(check_admissible({-0.1, 0.6, 0.5}, 7.0), std::invalid_argument);
  // catching buys room for losing
  CHECK_NOTHROW(check_admissible({0.0, 0.98, 0.02}, 63.0));
  for (const std::string& name : adversary_presets()) {
    AdversaryModel a = adversary_preset(name);
    for (double v : {7.0, 15.0, 31.0, 1023.0}) CHECK_NOTHROW(check_admissible(a.match(v), v));
  }
  CHECK_THROWS(adversary_preset("oracle"));
}

TEST_CASE("penalty schedule") {
  TournamentConfig c{64};
  CHECK(c.rounds() == 6);
  auto s = c.penalty_schedule();
  REQUIRE(s.size() == 3);
  CHECK(s[0] == 31.0);
  CHECK(s[1] == 15.0);
  CHECK(s[2] == 7.0);
  CHECK(TournamentConfig{8}.penalty_schedule().empty());
}

TEST_CASE("simulated tournaments") {
  Rng rng(2026);
  SUBCASE("honest play at k=8") {
    BiasReport r = simulate_tournament({8}, 0, adversary_preset("honest"), rng, 100000);
    CHECK(r.exact_fix_probability == doctest::Approx(1.0 - 0.125));
    CHECK(std::abs(r.monte_carlo_estimate - r.exact_fix_probability) <= 4.0 * r.stderr_);
  }
  SUBCASE("greedy adversary meets the recurrence") {
    for (long long k : {8LL, 16LL, 32LL, 64LL}) {
      double exact = exact_fix_probability({k}, 3, adversary_preset("greedy"));
      CHECK(exact == doctest::Approx(1.0 - tournament_bound(k).one_minus_pn).epsilon(1e-12));
    }
  }
  SUBCASE("every preset within the bound") {
    for (const std::string& name : adversary_presets()) {
      for (long long k : {8LL, 16LL, 32LL, 64LL}) {
        BiasReport r = simulate_tournament({k}, k / 3, adversary_preset(name), rng, 100000);
        CHECK(r.within_bound(4.0));
        CHECK(std::abs(r.monte_carlo_estimate - r.exact_fix_probability) <= 4.0 * r.stderr_ + 1e-12);
      }
    }
  }
  SUBCASE("kamikaze is caught at once") {
    BiasReport r = simulate_tournament({16}, 0, adversary_preset("kamikaze"), rng, 1000);
    CHECK(r.fixed == 0);
    CHECK(r.aborted == 1000);
  }
  SUBCASE("byes for the highest id") {
    AdversaryModel a = adversary_preset("greedy");
    CHECK(exact_fix_probability({5}, 4, a) == doctest::Approx(0.75));
    CHECK(exact_fix_probability({5}, 0, a) == doctest::Approx(1.0 - 0.25 * 0.25 * 0.25));
  }
  SUBCASE("deterministic per seed") {
    BiasReport a = simulate_tournament({32}, 0, adversary_preset("reckless"), Rng(9), 5000);
    BiasReport b = simulate_tournament({32}, 0, adversary_preset("reckless"), Rng(9), 5000);
    CHECK(a.fixed == b.fixed);
    CHECK(a.aborted == b.aborted);
  }
  CHECK_THROWS_AS(simulate_tournament({8}, 8, adversary_preset("honest"), rng, 10), std::out_of_range);
  CHECK_THROWS_AS(simulate_tournament({8}, 0, adversary_preset("honest"), rng, 0), std::invalid_argument);
  AdversaryModel bad{"bad", 0.75, [](double) { return MatchModel{0.0, 1.0, 0.0}; }};
  CHECK_THROWS_AS(simulate_tournament({16}, 0, bad, rng, 10), std::invalid_argument);
}

TEST_CASE("lightest bin") {
  Rng rng(77);
  SUBCASE("all honest") {
    LightestBinConfig c{64, 64, 2, committee_threshold(64, 64), BinStrategy::split};
    for (int i = 0; i < 200; ++i) {
      CommitteeResult r = lightest_bin_select(c, rng);
      CHECK(r.honest_present);
      CHECK(r.sizes[1] <= 32);
    }
  }
  SUBCASE("no reduction needed") {
    LightestBinConfig c{2, 1, 2, 2, BinStrategy::pile};
    CommitteeResult r = lightest_bin_select(c, rng);
    CHECK(r.committee == std::vector<long long>{0, 1});
  }
  SUBCASE("one round never exceeds the mean") {
    for (int bins : {2, 3, 5}) {
      for (BinStrategy s : {BinStrategy::pile, BinStrategy::split}) {
        for (long long k : {7LL, 64LL, 101LL}) {
          for (long long g : {1LL, k / 3 + 1, k}) {
            LightestBinConfig c{k, g, bins, k - 1, s};
            CommitteeResult r = lightest_bin_select(c, rng);
            REQUIRE(r.sizes.size() >= 2);
            long long occ = r.occupied[0];
            CHECK(r.sizes[1] <= (k + occ - 1) / occ);
            if (occ == bins) CHECK(r.sizes[1] <= (k + bins - 1) / bins);
          }
        }
      }
    }
  }
  SUBCASE("honest member with probability at least one half") {
    for (BinStrategy s : {BinStrategy::pile, BinStrategy::split}) {
      LightestBinConfig c{256, 64, 2, committee_threshold(256, 64), s};
      CommitteeReport r = committee_experiment(c, rng, 10000);
      CHECK(r.frequency >= 0.5 - 4.0 * r.stderr_);
      CHECK(r.mean_size <= 16.0);
    }
  }
  SUBCASE("split keeps the target lightest") {
    LightestBinConfig c{40, 4, 2, 39, BinStrategy::split};
    for (int i = 0; i < 100; ++i) {
      CommitteeResult r = lightest_bin_select(c, rng);
      CHECK(r.sizes[1] >= 18);
    }
  }
  CHECK_THROWS(lightest_bin_select({4, 5, 2, 2, BinStrategy::pile}, rng));
  CHECK(bin_strategy_from_string("split") == BinStrategy::split);
  CHECK_THROWS(bin_strategy_from_string("flood"));
}

TEST_CASE("combined bias") {
  for (long long k : {8LL, 64LL, 1024LL}) {
    CombinedBias one = combined_bias(k, 1);
    CHECK_FALSE(one.reduced);
    CHECK(one.honest_presence == 1.0);
    CHECK(one.bias == doctest::Approx(tournament_bound(k).bias));
  }
  double all = combined_bias(16, 16).bias;
  for (long long k = 16; k <= 4096; k *= 2) CHECK(combined_bias(k, k).bias == doctest::Approx(all));
  CHECK(all < 0.5);
  double c_prime = 1.0;
  for (long long k = 16; k <= 4096; k *= 2) {
    for (long long g : {1LL, k / 8, k / 4, k / 2}) {
      CombinedBias b = combined_bias(k, g);
      c_prime = std::min(c_prime, (0.5 - b.bias) * static_cast<double>(k) / static_cast<double>(g));
    }
  }
  CHECK(c_prime > 0.0);
  for (long long k = 16; k <= 4096; k *= 2) {
    for (long long g : {1LL, k / 8, k / 4, k / 2}) {
      CHECK(combined_bias(k, g).bias <= 0.5 - c_prime * static_cast<double>(g) / static_cast<double>(k) + 1e-15);
    }
  }
}
