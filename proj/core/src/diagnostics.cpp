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

#include "abcfuzz/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "abcfuzz/errors.hpp"
#include "abcfuzz/types.hpp"

namespace abcfuzz {

double effective_sample_size(std::span<const double> weights) {
  if (!is_normalized(weights)) {
    throw UsageError("effective_sample_size requires normalized weights");
  }
  const double squares = std::transform_reduce(weights.begin(), weights.end(), 0.0, std::plus<>{},
                                               [](double w) { return w * w; });
  return std::clamp(1.0 / squares, 1.0, static_cast<double>(weights.size()));
}

TraceSummary trace_summary(std::span<const double> trace, std::size_t burn_in) {
  if (burn_in >= trace.size() || trace.size() - burn_in < 2) {
    throw UsageError("trace_summary needs at least two points after burn-in");
  }
  const auto segment = trace.subspan(burn_in);
  const auto n = static_cast<double>(segment.size());

  TraceSummary summary;
  summary.count = segment.size();
  summary.mean = std::accumulate(segment.begin(), segment.end(), 0.0) / n;
  double squares = 0.0;
  for (const double x : segment) {
    squares += (x - summary.mean) * (x - summary.mean);
  }
  summary.std_dev = std::sqrt(squares / (n - 1.0));
  const auto [lo, hi] = std::minmax_element(segment.begin(), segment.end());
  summary.min = *lo;
  summary.max = *hi;
  return summary;
}

std::vector<double> weight_sum_delta_series(std::span<const double> log_weight_sums) {
  if (log_weight_sums.size() < 2) {
    throw UsageError("weight_sum_delta_series needs at least two entries");
  }
  std::vector<double> deltas(log_weight_sums.size() - 1);
  for (std::size_t k = 0; k + 1 < log_weight_sums.size(); ++k) {
    deltas[k] = std::abs(log_weight_sums[k + 1] - log_weight_sums[k]);
  }
  return deltas;
}

ConvergenceHeuristic assess_convergence(std::span<const double> deltas) {
  if (deltas.empty()) {
    throw UsageError("assess_convergence needs a nonempty series");
  }
  ConvergenceHeuristic out;
  out.window = std::max<std::size_t>(1, deltas.size() / 10);
  const auto w = static_cast<double>(out.window);
  out.head_mean = std::accumulate(deltas.begin(), deltas.begin() + static_cast<std::ptrdiff_t>(out.window), 0.0) / w;
  out.tail_mean = std::accumulate(deltas.end() - static_cast<std::ptrdiff_t>(out.window), deltas.end(), 0.0) / w;
  out.converging = out.tail_mean < 0.1 * out.head_mean;
  return out;
}

}  // namespace abcfuzz
