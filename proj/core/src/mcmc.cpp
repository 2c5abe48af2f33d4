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

#include "abcfuzz/mcmc.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "abcfuzz/errors.hpp"
#include "abcfuzz/likelihood.hpp"
#include "abcfuzz/random.hpp"
#include "abcfuzz/smc.hpp"

namespace abcfuzz {

double accept_probability(double log_likelihood_current, double log_likelihood_proposed) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  if (std::isnan(log_likelihood_current) || std::isnan(log_likelihood_proposed) ||
      log_likelihood_current == kInf || log_likelihood_proposed == kInf) {
    throw UsageError("log-likelihoods must be finite or -inf");
  }
  if (log_likelihood_current == -kInf) {
    if (log_likelihood_proposed == -kInf) {
      throw DegenerateStateError("current and proposed states both have zero likelihood");
    }
    return 1.0;
  }
  const double delta = log_likelihood_proposed - log_likelihood_current;
  return delta >= 0.0 ? 1.0 : std::exp(delta);
}

McmcResult run_mcmc(const ParticleSet& prior, const McmcConfig& cfg, const Oracle* oracle,
                    const McmcObserver& observer) {
  if (prior.empty()) {
    throw UsageError("run_mcmc requires a nonempty prior");
  }
  cfg.validate(prior.dims());
  if (cfg.initial_index && *cfg.initial_index >= prior.size()) {
    throw UsageError("initial_index " + std::to_string(*cfg.initial_index) + " is out of range for a prior of " +
                     std::to_string(prior.size()) + " particles");
  }

  RandomSource rng{cfg.seed, Stream::kMcmc};
  McmcResult result;
  result.initial_index = cfg.initial_index ? *cfg.initial_index : rng.index(prior.size());

  Particle current = prior[result.initial_index];
  double current_ll = log_likelihood(current, cfg.likelihood);

  std::vector<Particle> chain;
  chain.reserve(cfg.n_steps - cfg.burn_in);
  std::vector<Particle> full;
  if (cfg.trace_all_dims) {
    full.reserve(cfg.n_steps);
  }
  result.trace_dim0.reserve(cfg.n_steps);
  result.accepted.reserve(cfg.n_steps);

  std::size_t accepted_count = 0;
  for (std::size_t step = 0; step < cfg.n_steps; ++step) {
    Particle proposal = transition(current, cfg.step_std, rng);
    const double proposed_ll = log_likelihood(proposal, cfg.likelihood);

    McmcStep record{step, current_ll, proposed_ll, 0.0, false};
    try {
      record.accept_probability = accept_probability(current_ll, proposed_ll);
    } catch (const DegenerateStateError& e) {
      throw DegenerateStateError(std::string(e.what()) + " (step " + std::to_string(step) + ")");
    }
    record.accepted = rng.uniform() < record.accept_probability;

    if (record.accepted) {
      current = std::move(proposal);
      current_ll = proposed_ll;
      ++accepted_count;
    }
    if (observer) {
      observer(record);
    }

    result.trace_dim0.push_back(current[0]);
    result.accepted.push_back(record.accepted ? 1 : 0);
    if (cfg.trace_all_dims) {
      full.push_back(current);
    }
    if (step >= cfg.burn_in) {
      chain.push_back(current);
    }
  }

  result.chain = ParticleSet(std::move(chain));
  if (cfg.trace_all_dims) {
    result.full_trace = ParticleSet(std::move(full));
  }
  result.acceptance_rate = static_cast<double>(accepted_count) / static_cast<double>(cfg.n_steps);

  if (oracle != nullptr) {
    const auto before = oracle->calls();
    result.prior_pass_rate = pass_rate(prior, *oracle);
    result.chain_pass_rate = pass_rate(result.chain, *oracle);
    result.oracle_calls = oracle->calls() - before;
  }
  return result;
}

}  // namespace abcfuzz
