// Copyright 2026 The abc-fuzz Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ABCFUZZ_RANDOM_HPP
#define ABCFUZZ_RANDOM_HPP

#include <cstdint>
#include <random>

/**
 * \file
 * \brief Seedable random source used by every sampler.
 *
 * The pipeline is pinned so that runs are reproducible bit for bit:
 *
 * - The engine is `std::mt19937_64`, whose output sequence is fixed by the
 *   C++ standard. It is seeded through `std::seed_seq{lo32(seed), hi32(seed), stream}`.
 * - A uniform draw on [0, 1) takes the top 53 bits of one engine output and
 *   scales them by 2^-53.
 * - A standard normal draw uses the basic Box-Muller transform on two fresh
 *   uniforms u1, u2: `sqrt(-2 ln(1 - u1)) * cos(2 pi u2)`. The sine branch is
 *   discarded so that every normal consumes exactly two engine outputs.
 *
 * The standard library distributions are not used because their algorithms
 * are implementation defined.
 */

namespace abcfuzz {

/// Well-known stream identifiers, so one user seed can drive several
/// independent sources without correlated draws.
enum class Stream : std::uint32_t {
  kDefault = 0,
  kPrior = 1,
  kSmc = 2,
  kMcmc = 3,
  kBaseline = 4,
};

/// Deterministic stream of uniform and standard-normal variates.
///
/// Single owner: a source is never shared between runs or threads.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed, Stream stream = Stream::kDefault);

  /// Uniform real on [0, 1).
  double uniform();

  /// Standard normal real.
  double normal();

  /// Normal real with the given mean and standard deviation.
  double normal(double mean, double std_dev) { return mean + std_dev * normal(); }

  /// Uniform integer on [0, n). `n` must be positive.
  std::size_t index(std::size_t n);

  [[nodiscard]] std::uint64_t seed() const noexcept { return seed_; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace abcfuzz

#endif
