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

#ifndef ABCFUZZ_SMC_HPP
#define ABCFUZZ_SMC_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "abcfuzz/config.hpp"
#include "abcfuzz/oracle.hpp"
#include "abcfuzz/random.hpp"
#include "abcfuzz/types.hpp"

/**
 * \file
 * \brief Sequential Monte Carlo over a fixed-size particle population.
 *
 * Each step moves every live particle with a Gaussian random walk, weights the
 * population by the directed likelihood, resamples it systematically and
 * emits one posterior particle drawn by weight from the pre-resampling
 * population. A run of T steps therefore yields T posterior particles
 * regardless of the population size.
 */

namespace abcfuzz {

/// p + eps with eps ~ Normal(0, step_std^2 I), drawn coordinate by coordinate
/// in index order. `step_std == 0` returns `p` unchanged and consumes no draws.
[[nodiscard]] Particle transition(const Particle& p, double step_std, RandomSource& rng);

/// Max-shifted log(sum(exp(x))). Returns -inf when every entry is -inf.
/// Throws UsageError for empty input, NaN or +inf.
[[nodiscard]] double log_sum_exp(std::span<const double> log_values);

/// w_i = exp(log_w_i - log_sum_exp(log_w)).
///
/// Throws UsageError for empty input, NaN or +inf, and DegenerateWeightsError
/// (step 0) when every entry is -inf.
[[nodiscard]] std::vector<double> normalize_log_weights(std::span<const double> log_weights);

/// Systematic resampling with an explicit offset `u` in [0, 1/N): grid point
/// u + k/N selects the index whose cumulative-weight interval contains it.
/// Throws UsageError for unnormalized weights or an offset out of range.
[[nodiscard]] std::vector<std::size_t> systematic_resample(std::span<const double> weights, double u);

/// Systematic resampling with u ~ Uniform[0, 1/N) drawn from `rng`.
[[nodiscard]] std::vector<std::size_t> systematic_resample(std::span<const double> weights, RandomSource& rng);

/// One index drawn from Categorical(weights) by inversion of a single uniform.
[[nodiscard]] std::size_t categorical_draw(std::span<const double> weights, RandomSource& rng);

struct SmcResult {
  /// One particle per step.
  ParticleSet posterior;
  /// log of the unnormalized weight total at each step.
  std::vector<double> weight_sum_series;
  /// Effective sample size at each step, in [1, N].
  std::vector<double> ess_series;
  /// Live population and its weights at the final step, before resampling.
  std::optional<WeightedParticleSet> final_population;
  std::uint64_t oracle_calls = 0;
  std::optional<double> prior_pass_rate;
  std::optional<double> posterior_pass_rate;
};

/// Run SMC from `prior` for `cfg.n_steps` steps using RandomSource(cfg.seed, Stream::kSmc).
///
/// When `oracle` is given the prior and posterior pass rates are computed and
/// the number of oracle evaluations is recorded.
///
/// Throws ConfigError for an invalid config, UsageError for an empty prior and
/// DegenerateWeightsError naming the step where every weight vanished.
[[nodiscard]] SmcResult run_smc(const ParticleSet& prior, const SmcConfig& cfg, const Oracle* oracle = nullptr);

}  // namespace abcfuzz

#endif
