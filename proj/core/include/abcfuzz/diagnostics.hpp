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

#ifndef ABCFUZZ_DIAGNOSTICS_HPP
#define ABCFUZZ_DIAGNOSTICS_HPP

#include <cstddef>
#include <span>
#include <vector>

namespace abcfuzz {

/// 1 / sum(w_i^2) for normalized weights, clamped to [1, N] against rounding.
/// Throws UsageError for empty or unnormalized input.
[[nodiscard]] double effective_sample_size(std::span<const double> weights);

struct TraceSummary {
  std::size_t count = 0;
  double mean = 0.0;
  /// Sample standard deviation (divisor n - 1).
  double std_dev = 0.0;
  double min = 0.0;
  double max = 0.0;
};

/// Moments of trace[burn_in:]. Throws UsageError if fewer than two points remain.
[[nodiscard]] TraceSummary trace_summary(std::span<const double> trace, std::size_t burn_in);

/// |s[k+1] - s[k]| for consecutive entries. Throws UsageError for fewer than two entries.
[[nodiscard]] std::vector<double> weight_sum_delta_series(std::span<const double> log_weight_sums);

/// Advisory convergence heuristic over a weight-update series: the mean of the
/// final 10% of deltas is below 10% of the mean of the first 10%.
struct ConvergenceHeuristic {
  bool converging = false;
  double head_mean = 0.0;
  double tail_mean = 0.0;
  std::size_t window = 0;
};

/// Throws UsageError for an empty series.
[[nodiscard]] ConvergenceHeuristic assess_convergence(std::span<const double> deltas);

}  // namespace abcfuzz

#endif
