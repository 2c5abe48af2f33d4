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

#include <benchmark/benchmark.h>

#include <vector>

#include "abcfuzz/config.hpp"
#include "abcfuzz/likelihood.hpp"
#include "abcfuzz/mcmc.hpp"
#include "abcfuzz/oracle.hpp"
#include "abcfuzz/prior.hpp"
#include "abcfuzz/random.hpp"
#include "abcfuzz/smc.hpp"

namespace {

using namespace abcfuzz;

PriorConfig prior_config(std::size_t n, std::size_t dims) {
  PriorConfig cfg;
  cfg.n_particles = n;
  cfg.n_dims = dims;
  return cfg;
}

void BM_GeneratePrior(benchmark::State& state) {
  const auto cfg = prior_config(static_cast<std::size_t>(state.range(0)), 100);
  for (auto _ : state) {
    benchmark::DoNotOptimize(generate_prior(cfg));
  }
}
BENCHMARK(BM_GeneratePrior)->Arg(10)->Arg(1000);

void BM_LogLikelihoodBatch(benchmark::State& state) {
  const auto set = generate_prior(prior_config(static_cast<std::size_t>(state.range(0)), 100));
  const auto cfg = LikelihoodConfig::defaults(100, 10.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(log_likelihood_batch(set, cfg));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_LogLikelihoodBatch)->Arg(10)->Arg(1000);

void BM_NormalizeLogWeights(benchmark::State& state) {
  RandomSource rng{1};
  std::vector<double> log_w(static_cast<std::size_t>(state.range(0)));
  for (auto& x : log_w) {
    x = rng.normal(-1e3, 50.0);
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(normalize_log_weights(log_w));
  }
}
BENCHMARK(BM_NormalizeLogWeights)->Arg(10)->Arg(10000);

void BM_SystematicResample(benchmark::State& state) {
  RandomSource rng{2};
  std::vector<double> log_w(static_cast<std::size_t>(state.range(0)));
  for (auto& x : log_w) {
    x = rng.normal(0.0, 2.0);
  }
  const auto w = normalize_log_weights(log_w);
  for (auto _ : state) {
    benchmark::DoNotOptimize(systematic_resample(w, rng));
  }
}
BENCHMARK(BM_SystematicResample)->Arg(10)->Arg(10000);

void BM_RangeOracle(benchmark::State& state) {
  const auto set = generate_prior(prior_config(1000, 100));
  const RangeOracle oracle;
  for (auto _ : state) {
    benchmark::DoNotOptimize(count_passing(set, oracle));
  }
}
BENCHMARK(BM_RangeOracle);

void BM_RunSmc(benchmark::State& state) {
  const auto prior = generate_prior(prior_config(10, 100));
  SmcConfig cfg;
  cfg.n_steps = static_cast<std::size_t>(state.range(0));
  cfg.likelihood = LikelihoodConfig::defaults(100, 10.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_smc(prior, cfg));
  }
}
BENCHMARK(BM_RunSmc)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_RunMcmc(benchmark::State& state) {
  const auto prior = generate_prior(prior_config(10, 100));
  McmcConfig cfg;
  cfg.n_steps = static_cast<std::size_t>(state.range(0));
  cfg.likelihood = LikelihoodConfig::defaults(100, 10.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_mcmc(prior, cfg));
  }
}
BENCHMARK(BM_RunMcmc)->Arg(1000)->Arg(5000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
