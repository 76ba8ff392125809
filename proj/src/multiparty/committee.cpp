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

#include "qcf/multiparty/committee.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qcf/multiparty/tournament.hpp"

namespace qcf::multiparty {

namespace {

long long pow2_ceil(long long x) {
  long long p = 1;
  while (p < x) p <<= 1;
  return p;
}

// Dishonest counts per bin for the rushing adversary: as many cheaters as
// possible in the bin with the fewest honest players while it stays lightest.
std::vector<long long> split_placement(const std::vector<long long>& honest, long long dishonest) {
  const int bins = static_cast<int>(honest.size());
  int target = 0;
  for (int b = 1; b < bins; ++b) {
    if (honest[b] < honest[target]) target = b;
  }
  std::vector<long long> out(bins, 0);
  for (long long d = dishonest; d >= 0; --d) {
    long long load = honest[target] + d;
    long long needed = 0;
    for (int b = 0; b < bins; ++b) {
      if (b == target) continue;
      // bins below the target index win ties, so they need one extra player
      long long min_load = load + (b < target ? 1 : 0);
      needed += std::max(0LL, min_load - honest[b]);
    }
    if (needed <= dishonest - d) {
      out[target] = d;
      long long rest = dishonest - d;
      for (int b = 0; b < bins; ++b) {
        if (b == target) continue;
        long long add = std::max(0LL, load + (b < target ? 1 : 0) - honest[b]);
        out[b] = add;
        rest -= add;
      }
      for (int b = 0; b < bins && rest > 0; ++b) {
        if (b == target) continue;
        out[b] += rest;
        rest = 0;
      }
      if (rest > 0) out[target] += rest;
      return out;
    }
  }
  return out;  // d = 0 always fits: the target has the fewest honest players
}

}  // namespace

BinStrategy bin_strategy_from_string(const std::string& s) {
  if (s == "pile") return BinStrategy::pile;
  if (s == "split") return BinStrategy::split;
  throw std::invalid_argument("unknown bin strategy: " + s);
}

std::string to_string(BinStrategy s) { return s == BinStrategy::pile ? "pile" : "split"; }

long long committee_threshold(long long k, long long g, double factor) {
  if (k < 1 || g < 1 || g > k) throw std::invalid_argument("need 1 <= g <= k");
  if (!(factor > 0.0)) throw std::invalid_argument("threshold factor must be positive");
  return static_cast<long long>(std::ceil(factor * static_cast<double>(k) / static_cast<double>(g) - 1e-12));
}

CommitteeResult lightest_bin_select(const LightestBinConfig& config, Rng& rng) {
  if (config.k < 1 || config.g < 1 || config.g > config.k) throw std::invalid_argument("need 1 <= g <= k");
  if (config.bins < 2) throw std::invalid_argument("need at least 2 bins");
  if (config.threshold < 1) throw std::invalid_argument("threshold must be positive");

  CommitteeResult result;
  result.committee.resize(static_cast<std::size_t>(config.k));
  for (long long i = 0; i < config.k; ++i) result.committee[static_cast<std::size_t>(i)] = i;
  result.sizes.push_back(config.k);

  const auto bins = static_cast<std::size_t>(config.bins);
  while (static_cast<long long>(result.committee.size()) > config.threshold) {
    std::vector<std::vector<long long>> members(bins);
    std::vector<long long> honest_count(bins, 0);
    std::vector<long long> cheaters;
    for (long long id : result.committee) {
      if (id < config.g) {
        std::size_t b = rng.index(bins);
        members[b].push_back(id);
        ++honest_count[b];
      } else {
        cheaters.push_back(id);
      }
    }
    std::vector<long long> placement(bins, 0);
    const auto d = static_cast<long long>(cheaters.size());
    if (d == static_cast<long long>(result.committee.size())) {
      // no honest player left: the coalition has nothing to gain by stalling
      for (std::size_t b = 0; b < bins; ++b) placement[b] = d / config.bins + (static_cast<long long>(b) < d % config.bins);
    } else if (config.strategy == BinStrategy::pile) {
      placement[0] = static_cast<long long>(cheaters.size());
    } else {
      placement = split_placement(honest_count, static_cast<long long>(cheaters.size()));
    }
    std::size_t next = 0;
    for (std::size_t b = 0; b < bins; ++b) {
      for (long long c = 0; c < placement[b]; ++c) members[b].push_back(cheaters[next++]);
    }
    std::size_t lightest = bins;
    for (std::size_t b = 0; b < bins; ++b) {
      if (members[b].empty()) continue;
      if (lightest == bins || members[b].size() < members[lightest].size()) lightest = b;
    }
    result.occupied.push_back(
        static_cast<int>(std::count_if(members.begin(), members.end(), [](const auto& m) { return !m.empty(); })));
    std::sort(members[lightest].begin(), members[lightest].end());
    result.committee = std::move(members[lightest]);
    result.sizes.push_back(static_cast<long long>(result.committee.size()));
  }
  result.honest_present =
      std::any_of(result.committee.begin(), result.committee.end(), [&](long long id) { return id < config.g; });
  return result;
}

CommitteeReport committee_experiment(const LightestBinConfig& config, const Rng& rng, long long runs) {
  if (runs <= 0) throw std::invalid_argument("runs must be positive");
  CommitteeReport report;
  report.runs = runs;
  double total_size = 0.0;
  for (long long run = 0; run < runs; ++run) {
    Rng r = rng.split(static_cast<std::uint64_t>(run));
    CommitteeResult c = lightest_bin_select(config, r);
    if (c.honest_present) ++report.present;
    total_size += static_cast<double>(c.committee.size());
  }
  double p = static_cast<double>(report.present) / static_cast<double>(runs);
  report.frequency = p;
  report.stderr_ = std::sqrt(p * (1.0 - p) / static_cast<double>(runs));
  report.mean_size = total_size / static_cast<double>(runs);
  return report;
}

CombinedBias combined_bias(long long k, long long g, double threshold_factor) {
  CombinedBias out;
  out.k = k;
  out.g = g;
  out.threshold = committee_threshold(k, g, threshold_factor);
  out.reduced = out.threshold < k;
  long long players = out.reduced ? out.threshold : k;
  out.k_prime = std::max(8LL, pow2_ceil(players));
  out.honest_presence = out.reduced ? 0.5 : 1.0;
  out.one_minus_p = tournament_bound(out.k_prime).one_minus_pn;
  out.bias = 0.5 - out.honest_presence * out.one_minus_p;
  return out;
}

}  // namespace qcf::multiparty
