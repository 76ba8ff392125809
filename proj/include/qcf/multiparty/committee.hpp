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

#ifndef QCF_MULTIPARTY_COMMITTEE_HPP
#define QCF_MULTIPARTY_COMMITTEE_HPP

#include <string>
#include <vector>

#include "qcf/core/rng.hpp"

namespace qcf::multiparty {

enum class BinStrategy {
  pile,   // every dishonest player picks bin 0
  split,  // sees the honest choices, then fills the bin with the fewest honest players
};

BinStrategy bin_strategy_from_string(const std::string& s);
std::string to_string(BinStrategy s);

struct LightestBinConfig {
  long long k = 0;
  long long g = 1;  // honest players are ids 0..g-1
  int bins = 2;
  long long threshold = 0;  // stop once the committee has at most this many players
  BinStrategy strategy = BinStrategy::pile;
};

/// ceil(factor * k / g).
long long committee_threshold(long long k, long long g, double factor = 4.0);

struct CommitteeResult {
  std::vector<long long> committee;
  std::vector<long long> sizes;  // committee size after each round, starting with k
  std::vector<int> occupied;     // non-empty bins in each round
  bool honest_present = false;
};

/// Iterated lightest-bin selection: the least occupied non-empty bin survives,
/// ties go to the lowest bin index.
CommitteeResult lightest_bin_select(const LightestBinConfig& config, Rng& rng);

struct CommitteeReport {
  long long runs = 0;
  long long present = 0;
  double frequency = 0.0;
  double stderr_ = 0.0;
  double mean_size = 0.0;
};

CommitteeReport committee_experiment(const LightestBinConfig& config, const Rng& rng, long long runs);

struct CombinedBias {
  long long k = 0;
  long long g = 0;
  long long threshold = 0;
  bool reduced = false;         // a committee reduction is needed
  long long k_prime = 0;        // tournament size used for the bound
  double honest_presence = 1.0; // 1/2 with a reduction, 1 otherwise
  double one_minus_p = 0.0;     // of the tournament on k_prime players
  double bias = 0.0;            // 1/2 - honest_presence * one_minus_p
};

CombinedBias combined_bias(long long k, long long g, double threshold_factor = 4.0);

}  // namespace qcf::multiparty

#endif  // QCF_MULTIPARTY_COMMITTEE_HPP
