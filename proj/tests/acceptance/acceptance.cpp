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

/// \file
/// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
/// nonzero if any criterion fails.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "abcfuzz/likelihood.hpp"
#include "abcfuzz/mcmc.hpp"
#include "abcfuzz/oracle.hpp"
#include "abcfuzz/prior.hpp"
#include "abcfuzz/random.hpp"
#include "abcfuzz/report.hpp"
#include "abcfuzz/smc.hpp"
#include "cli.hpp"
#include "test_support.hpp"

namespace {

using namespace abcfuzz;
using abcfuzz::testing::slurp;
using abcfuzz::testing::TempDir;

struct Outcome {
  bool pass;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double time_limit_seconds;
  std::function<Outcome()> body;
};

std::string fixed(double value, int digits = 4) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(digits) << value;
  return s.str();
}

PriorConfig reference_prior(std::uint64_t seed) {
  PriorConfig cfg;
  cfg.n_particles = 10;
  cfg.n_dims = 100;
  cfg.mean = 0.0;
  cfg.std_dev = 10.0;
  cfg.zero_fraction = 0.3;
  cfg.seed = seed;
  return cfg;
}

Outcome prior_pass_rate() {
  const RangeOracle oracle;
  double total = 0.0;
  constexpr int kSeeds = 200;
  for (int seed = 0; seed < kSeeds; ++seed) {
    total += pass_rate(generate_prior(reference_prior(static_cast<std::uint64_t>(seed))), oracle);
  }
  const double mean = total / kSeeds;
  return {mean >= 0.30 && mean <= 0.36, "mean prior pass rate over 200 seeds = " + fixed(mean) + ", want [0.30, 0.36]"};
}

Outcome smc_directedness() {
  const RangeOracle oracle;
  int below_floor = 0;
  int below_gain = 0;
  double min_posterior = 1.0;
  double min_gain = 1.0;
  double mean_posterior = 0.0;
  std::string failures;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto prior = generate_prior(reference_prior(seed));
    SmcConfig cfg;
    cfg.likelihood = LikelihoodConfig::defaults(100, 10.0);
    cfg.seed = seed;
    const auto result = run_smc(prior, cfg, &oracle);
    const double post = *result.posterior_pass_rate;
    const double gain = post - *result.prior_pass_rate;
    min_posterior = std::min(min_posterior, post);
    min_gain = std::min(min_gain, gain);
    mean_posterior += post / 20.0;
    const bool floor_ok = post > 0.60;
    const bool gain_ok = gain >= 0.25 - 1e-12;
    below_floor += floor_ok ? 0 : 1;
    below_gain += gain_ok ? 0 : 1;
    if (!floor_ok || !gain_ok) {
      failures += " seed" + std::to_string(seed) + "(prior=" + fixed(*result.prior_pass_rate, 2) +
                  ",post=" + fixed(post) + ")";
    }
  }
  std::string detail = "20 seeds: mean posterior=" + fixed(mean_posterior) + " min posterior=" + fixed(min_posterior) +
                       " min gain=" + fixed(min_gain) + " seeds<=0.60: " + std::to_string(below_floor) +
                       " seeds with gain<0.25: " + std::to_string(below_gain);
  if (!failures.empty()) {
    detail += "; failing:" + failures;
  }
  return {below_floor == 0 && below_gain == 0, detail};
}

Outcome mcmc_behavior() {
  bool ok = true;
  std::ostringstream detail;

  double lo = 1.0;
  double hi = 0.0;
  std::size_t uphill = 0;
  std::size_t violations = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto prior = generate_prior(reference_prior(seed));
    McmcConfig cfg;
    cfg.likelihood = LikelihoodConfig::defaults(100, 10.0);
    cfg.seed = seed;
    const auto result = run_mcmc(prior, cfg, nullptr, [&](const McmcStep& step) {
      if (step.proposed_log_likelihood >= step.current_log_likelihood) {
        ++uphill;
        if (!step.accepted || step.accept_probability != 1.0) {
          ++violations;
        }
      }
    });
    lo = std::min(lo, result.acceptance_rate);
    hi = std::max(hi, result.acceptance_rate);
  }
  const bool a = lo > 0.0 && hi < 1.0;
  const bool b = violations == 0 && uphill > 0;
  detail << "(a) acceptance in [" << fixed(lo) << ", " << fixed(hi) << "] over 20 seeds "
         << (a ? "ok" : "FAILED") << "; (b) " << violations << " violations in " << uphill << " uphill proposals "
         << (b ? "ok" : "FAILED");

  const ParticleSet start({Particle{0.0}});
  McmcConfig cfg;
  cfg.n_steps = 101000;
  cfg.burn_in = 1000;
  cfg.step_std = 1.0;
  cfg.likelihood.target = Particle::zeros(1);
  cfg.likelihood.alpha = 0.0;
  cfg.likelihood.scale = 1.0;
  cfg.initial_index = 0;
  cfg.seed = 12;
  const auto chain = run_mcmc(start, cfg);
  double mean_abs = 0.0;
  for (const auto& p : chain.chain) {
    mean_abs += std::abs(p[0]);
  }
  mean_abs /= static_cast<double>(chain.chain.size());
  const double expected = abcfuzz::testing::integrated_mean_abs(1.0, 0.0);
  const double rel = std::abs(mean_abs - expected) / expected;
  const bool c = rel <= 0.10;
  detail << "; (c) E|x| = " << fixed(mean_abs) << " vs quadrature " << fixed(expected) << " over "
         << chain.chain.size() << " steps (rel err " << fixed(rel) << ") " << (c ? "ok" : "FAILED");
  ok = a && b && c;
  return {ok, detail.str()};
}

Outcome resampling_correctness() {
  const std::vector<double> weights{0.7, 0.2, 0.1};
  constexpr int kTrials = 100000;
  RandomSource rng{2024, Stream::kSmc};
  std::vector<double> copies(3, 0.0);
  for (int t = 0; t < kTrials; ++t) {
    for (const auto i : systematic_resample(weights, rng)) {
      copies[i] += 1.0;
    }
  }
  bool ok = true;
  std::ostringstream detail;
  detail << "frequencies";
  for (std::size_t i = 0; i < 3; ++i) {
    const double freq = copies[i] / (3.0 * kTrials);
    ok = ok && std::abs(freq - weights[i]) <= 0.01;
    detail << ' ' << fixed(freq);
  }

  const std::vector<double> point{0.0, 0.0, 1.0, 0.0};
  const std::vector<double> uniform(8, 0.125);
  bool exact = true;
  for (int t = 0; t < 1000; ++t) {
    exact = exact && systematic_resample(point, rng) == std::vector<std::size_t>(4, 2);
    std::vector<std::size_t> expected(8);
    std::iota(expected.begin(), expected.end(), std::size_t{0});
    exact = exact && systematic_resample(uniform, rng) == expected;
  }
  detail << " vs 0.7 0.2 0.1 (tol 0.01); point-mass and uniform cases " << (exact ? "exact" : "NOT exact");
  return {ok && exact, detail.str()};
}

Outcome numerical_stability() {
  bool ok = true;
  double worst = 0.0;
  for (const std::size_t n : {2U, 10U, 100U, 1000U, 10000U}) {
    for (const double base : {-1e6, -1e300, 1e6, 0.0}) {
      std::vector<double> lw(n);
      for (std::size_t i = 0; i < n; ++i) {
        lw[i] = base + static_cast<double>(i);
      }
      const auto w = normalize_log_weights(lw);
      double sum = 0.0;
      for (const double x : w) {
        ok = ok && std::isfinite(x) && x >= 0.0;
        sum += x;
      }
      worst = std::max(worst, std::abs(sum - 1.0));
    }
  }
  ok = ok && worst <= 1e-12;
  std::ostringstream detail;
  detail << "max |sum - 1| = " << std::scientific << std::setprecision(2) << worst << " (tol 1e-12), all finite";
  return {ok, detail.str()};
}

int run_binary(const std::string& args) {
  const std::string cmd = std::string(ABCFUZZ_CLI_BINARY) + ' ' + args + " >/dev/null 2>&1";
  const int raw = std::system(cmd.c_str());
  return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
}

nlohmann::json report_without_timestamp(const std::filesystem::path& path) {
  auto j = nlohmann::json::parse(slurp(path));
  j.erase("timestamp");
  return j;
}

Outcome determinism() {
  TempDir dir;
  const std::vector<std::pair<std::string, std::string>> commands{
      {"gen-prior", "gen-prior --seed 7"},
      {"run smc", "run smc --seed 7"},
      {"run mcmc", "run mcmc --seed 7 --steps 2000 --burn-in 200 --trace-all-dims"},
      {"compare", "compare --seed 7 --budget 2000"},
  };
  bool ok = true;
  std::ostringstream detail;
  for (std::size_t i = 0; i < commands.size(); ++i) {
    const auto& [label, args] = commands[i];
    const auto a = dir / ("a" + std::to_string(i));
    const auto b = dir / ("b" + std::to_string(i));
    const int ca = run_binary(args + " --run-id r --out " + a.string());
    const int cb = run_binary(args + " --run-id r --out " + b.string());
    bool same = ca == 0 && cb == 0;
    std::size_t files = 0;
    if (same) {
      same = report_without_timestamp(a / "r" / "report.json") == report_without_timestamp(b / "r" / "report.json");
      for (const auto& entry : std::filesystem::directory_iterator(a / "r")) {
        const auto name = entry.path().filename();
        if (name == "report.json") {
          continue;
        }
        ++files;
        same = same && std::filesystem::exists(b / "r" / name) && slurp(entry.path()) == slurp(b / "r" / name);
      }
      std::size_t files_b = 0;
      for ([[maybe_unused]] const auto& entry : std::filesystem::directory_iterator(b / "r")) {
        ++files_b;
      }
      same = same && files_b == files + 1;
    }
    ok = ok && same;
    detail << (i == 0 ? "" : "; ") << label << ": " << (same ? "identical" : "DIFFERENT") << " (report + " << files
           << " files)";
  }
  return {ok, detail.str()};
}

Outcome budgeted_comparison() {
  TempDir dir;
  int wins = 0;
  double smc_mean = 0.0;
  double random_mean = 0.0;
  std::string errors;
  for (int seed = 0; seed < 20; ++seed) {
    std::ostringstream out;
    std::ostringstream err;
    const auto id = "cmp" + std::to_string(seed);
    const int code = cli::run({"abc-fuzz", "compare", "--budget", "2000", "--seed", std::to_string(seed), "--out",
                               dir.path().string(), "--run-id", id},
                              out, err);
    if (code != 0) {
      errors += " seed" + std::to_string(seed) + ": exit " + std::to_string(code);
      continue;
    }
    const auto report = read_report(dir / id / "report.json");
    const double random_rate = *report.prior_pass_rate;
    const double smc_rate = *report.posterior_pass_rate;
    random_mean += random_rate / 20.0;
    smc_mean += smc_rate / 20.0;
    wins += smc_rate > random_rate ? 1 : 0;
  }
  std::string detail = "SMC beats random on " + std::to_string(wins) + "/20 seeds (need 18); mean rates smc=" +
                       fixed(smc_mean) + " random=" + fixed(random_mean);
  if (!errors.empty()) {
    detail += "; errors:" + errors;
  }
  return {wins >= 18 && errors.empty(), detail};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "prior pass rate", 1.0, prior_pass_rate},
      {2, "smc directedness", 30.0, smc_directedness},
      {3, "mcmc behavior", 20.0, mcmc_behavior},
      {4, "resampling correctness", 5.0, resampling_correctness},
      {5, "numerical stability", 1.0, numerical_stability},
      {6, "cli determinism", 30.0, determinism},
      {7, "budgeted comparison", 60.0, budgeted_comparison},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = c.body();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = seconds < c.time_limit_seconds;
    const bool pass = outcome.pass && in_time;
    failed += pass ? 0 : 1;
    std::cout << (pass ? "PASS" : "FAIL") << " criterion " << c.id << " (" << c.name << "): " << outcome.detail
              << " [" << fixed(seconds, 3) << " s, limit " << fixed(c.time_limit_seconds, 0) << " s"
              << (in_time ? "" : ", OVER TIME LIMIT") << "]" << std::endl;
  }
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << std::endl;
  return failed == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
