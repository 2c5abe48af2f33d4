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

#include "abcfuzz/smc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "abcfuzz/diagnostics.hpp"
#include "abcfuzz/errors.hpp"
#include "abcfuzz/likelihood.hpp"

namespace abcfuzz {

namespace {

void require_normalized(std::span<const double> weights, const char* caller) {
  if (!is_normalized(weights)) {
    throw UsageError(std::string(caller) + " requires normalized weights");
  }
}

std::vector<double> cumulative(std::span<const double> weights) {
  std::vector<double> out(weights.size());
  double total = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    total += weights[i];
    out[i] = total;
  }
  return out;
}

/// Last index with positive weight, so rounding in the cumulative sum can
/// never select a trailing zero-weight particle.
std::size_t last_positive(std::span<const double> weights) {
  for (std::size_t i = weights.size(); i-- > 0;) {
    if (weights[i] > 0.0) {
      return i;
    }
  }
  return weights.size() - 1;
}

}  // namespace

Particle transition(const Particle& p, double step_std, RandomSource& rng) {
  if (!(step_std >= 0.0)) {
    throw UsageError("transition step_std must be nonnegative");
  }
  if (step_std == 0.0) {
    return p;
  }
  std::vector<double> moved(p.values().begin(), p.values().end());
  for (auto& x : moved) {
    x += step_std * rng.normal();
  }
  return Particle(std::move(moved));
}

double log_sum_exp(std::span<const double> log_values) {
  if (log_values.empty()) {
    throw UsageError("log_sum_exp of an empty sequence");
  }
  constexpr double kMinusInf = -std::numeric_limits<double>::infinity();
  double max = kMinusInf;
  for (const double x : log_values) {
    if (std::isnan(x) || x == std::numeric_limits<double>::infinity()) {
      throw UsageError("log weights must be finite or -inf");
    }
    max = std::max(max, x);
  }
  if (max == kMinusInf) {
    return kMinusInf;
  }
  double sum = 0.0;
  for (const double x : log_values) {
    sum += std::exp(x - max);
  }
  return max + std::log(sum);
}

std::vector<double> normalize_log_weights(std::span<const double> log_weights) {
  if (log_sum_exp(log_weights) == -std::numeric_limits<double>::infinity()) {
    throw DegenerateWeightsError("every log weight is -inf", 0);
  }
  const double max = *std::max_element(log_weights.begin(), log_weights.end());
  std::vector<double> weights(log_weights.size());
  double total = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    weights[i] = std::exp(log_weights[i] - max);
    total += weights[i];
  }
  for (auto& w : weights) {
    w /= total;
  }
  return weights;
}

std::vector<std::size_t> systematic_resample(std::span<const double> weights, double u) {
  require_normalized(weights, "systematic_resample");
  const std::size_t n = weights.size();
  const double spacing = 1.0 / static_cast<double>(n);
  if (!(u >= 0.0 && u < spacing)) {
    throw UsageError("systematic_resample offset must lie in [0, 1/N)");
  }
  const auto cum = cumulative(weights);
  const std::size_t last = last_positive(weights);

  std::vector<std::size_t> indices(n);
  std::size_t j = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const double point = u + static_cast<double>(k) * spacing;
    while (j < last && point >= cum[j]) {
      ++j;
    }
    indices[k] = j;
  }
  return indices;
}

std::vector<std::size_t> systematic_resample(std::span<const double> weights, RandomSource& rng) {
  require_normalized(weights, "systematic_resample");
  return systematic_resample(weights, rng.uniform() / static_cast<double>(weights.size()));
}

std::size_t categorical_draw(std::span<const double> weights, RandomSource& rng) {
  require_normalized(weights, "categorical_draw");
  const double u = rng.uniform();
  const auto cum = cumulative(weights);
  const std::size_t last = last_positive(weights);
  std::size_t j = 0;
  while (j < last && u >= cum[j]) {
    ++j;
  }
  return j;
}

SmcResult run_smc(const ParticleSet& prior, const SmcConfig& cfg, const Oracle* oracle) {
  if (prior.empty()) {
    throw UsageError("run_smc requires a nonempty prior");
  }
  cfg.validate(prior.dims());

  RandomSource rng{cfg.seed, Stream::kSmc};
  std::vector<Particle> population(prior.begin(), prior.end());
  std::vector<Particle> next;
  next.reserve(population.size());
  std::vector<double> log_weights(population.size());

  SmcResult result;
  result.weight_sum_series.reserve(cfg.n_steps);
  result.ess_series.reserve(cfg.n_steps);
  std::vector<Particle> posterior;
  posterior.reserve(cfg.n_steps);

  for (std::size_t step = 0; step < cfg.n_steps; ++step) {
    for (std::size_t i = 0; i < population.size(); ++i) {
      population[i] = transition(population[i], cfg.step_std, rng);
      log_weights[i] = log_likelihood(population[i], cfg.likelihood);
    }

    const double log_total = log_sum_exp(log_weights);
    if (log_total == -std::numeric_limits<double>::infinity()) {
      throw DegenerateWeightsError("every particle weight vanished", step);
    }
    result.weight_sum_series.push_back(log_total);

    const auto weights = normalize_log_weights(log_weights);
    result.ess_series.push_back(effective_sample_size(weights));

    const auto resampled = systematic_resample(weights, rng);
    posterior.push_back(population[categorical_draw(weights, rng)]);

    if (step + 1 == cfg.n_steps) {
      result.final_population.emplace(ParticleSet(population), weights);
    }

    next.clear();
    for (const std::size_t i : resampled) {
      next.push_back(population[i]);
    }
    population.swap(next);
  }
  result.posterior = ParticleSet(std::move(posterior));

  if (oracle != nullptr) {
    const auto before = oracle->calls();
    result.prior_pass_rate = pass_rate(prior, *oracle);
    result.posterior_pass_rate = pass_rate(result.posterior, *oracle);
    result.oracle_calls = oracle->calls() - before;
  }
  return result;
}

}  // namespace abcfuzz
