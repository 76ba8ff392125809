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

#ifndef QCF_CORE_RNG_HPP
#define QCF_CORE_RNG_HPP

#include <cstddef>
#include <cstdint>
#include <random>

namespace qcf {

/// Seeded random stream. Every stochastic operation in the library takes one
/// of these explicitly; split() derives independent child streams so that
/// parallel batches stay reproducible regardless of scheduling.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(mix(seed)) {}

  std::uint64_t seed() const { return seed_; }

  /// Child stream keyed by `stream`. Does not advance this stream.
  Rng split(std::uint64_t stream) const {
    return Rng(mix(seed_ ^ mix(stream + 0x632be59bd9b4e019ULL)));
  }

  double uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_); }
  bool bernoulli(double p) { return uniform() < p; }
  int bit() { return static_cast<int>(engine_() >> 63); }
  std::size_t index(std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(engine_);
  }
  double normal() { return std::normal_distribution<double>(0.0, 1.0)(engine_); }

  std::mt19937_64& engine() { return engine_; }

 private:
  // splitmix64 finalizer
  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace qcf

#endif  // QCF_CORE_RNG_HPP
