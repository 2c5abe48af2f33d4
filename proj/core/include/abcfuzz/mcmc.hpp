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

#ifndef ABCFUZZ_MCMC_HPP
#define ABCFUZZ_MCMC_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "abcfuzz/config.hpp"
#include "abcfuzz/oracle.hpp"
#include "abcfuzz/types.hpp"

namespace abcfuzz {

/// Metropolis rule for a symmetric proposal: min(1, exp(proposed - current)).
/// Throws DegenerateStateError when both arguments are -inf and UsageError for NaN
/// or +inf.
[[nodiscard]] double accept_probability(double log_likelihood_current, double log_likelihood_proposed);

/// What happened at one chain step; passed to an McmcObserver.
struct McmcStep {
  std::size_t step = 0;
  double current_log_likelihood = 0.0;
  double proposed_log_likelihood = 0.0;
  double accept_probability = 0.0;
  bool accepted = false;
};

using McmcObserver = std::function<void(const McmcStep&)>;

struct McmcResult {
  /// States after burn-in, length n_steps - burn_in.
  ParticleSet chain;
  /// First coordinate of the state after every step, burn-in included.
  std::vector<double> trace_dim0;
  /// 1 where the proposal at that step was accepted.
  std::vector<std::uint8_t> accepted;
  /// Every state, burn-in included, when trace_all_dims is set.
  std::optional<ParticleSet> full_trace;
  std::size_t initial_index = 0;
  double acceptance_rate = 0.0;
  std::uint64_t oracle_calls = 0;
  std::optional<double> prior_pass_rate;
  std::optional<double> chain_pass_rate;
};

/// Single-chain random-walk Metropolis started at one prior particle, using
/// RandomSource(cfg.seed, Stream::kMcmc). Proposals use the same kernel as
/// SMC's transition().
///
/// With an oracle the prior and post-burn-in chain pass rates are recorded.
/// Throws ConfigError for an invalid config, UsageError for an empty prior or
/// an out-of-range initial index, DegenerateStateError naming the step where
/// both the state and the proposal had zero likelihood.
[[nodiscard]] McmcResult run_mcmc(const ParticleSet& prior, const McmcConfig& cfg, const Oracle* oracle = nullptr,
                                  const McmcObserver& observer = {});

}  // namespace abcfuzz

#endif
