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

#include "abcfuzz/likelihood.hpp"

#include <cmath>
#include <string>

#include "abcfuzz/errors.hpp"

namespace abcfuzz {

double log_likelihood(const Particle& p, const LikelihoodConfig& cfg) {
  if (p.dims() != cfg.target.dims()) {
    throw UsageError("particle has " + std::to_string(p.dims()) + " dimensions, likelihood target has " +
                     std::to_string(cfg.target.dims()));
  }
  double squared = 0.0;
  for (std::size_t i = 0; i < p.dims(); ++i) {
    const double d = p[i] - cfg.target[i];
    squared += d * d;
  }
  return -std::sqrt(squared) / cfg.scale - cfg.alpha * std::abs(p[0]);
}

std::vector<double> log_likelihood_batch(const ParticleSet& set, const LikelihoodConfig& cfg) {
  if (set.empty()) {
    throw UsageError("log_likelihood_batch requires a nonempty particle set");
  }
  std::vector<double> out;
  out.reserve(set.size());
  for (const auto& p : set) {
    out.push_back(log_likelihood(p, cfg));
  }
  return out;
}

}  // namespace abcfuzz
