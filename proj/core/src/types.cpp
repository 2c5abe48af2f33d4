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

#include "abcfuzz/types.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "abcfuzz/errors.hpp"

namespace abcfuzz {

Particle::Particle(std::vector<double> values) : values_{std::move(values)} {
  if (values_.empty()) {
    throw UsageError("particle must have at least one dimension");
  }
  const auto bad = std::find_if(values_.begin(), values_.end(), [](double v) { return !std::isfinite(v); });
  if (bad != values_.end()) {
    throw UsageError("particle coordinate " + std::to_string(bad - values_.begin()) + " is not finite");
  }
}

Particle Particle::zeros(std::size_t dims) {
  return Particle(std::vector<double>(dims, 0.0));
}

ParticleSet::ParticleSet(std::vector<Particle> particles) : particles_{std::move(particles)} {
  for (std::size_t i = 1; i < particles_.size(); ++i) {
    if (particles_[i].dims() != particles_.front().dims()) {
      throw UsageError("particle " + std::to_string(i) + " has " + std::to_string(particles_[i].dims()) +
                       " dimensions, expected " + std::to_string(particles_.front().dims()));
    }
  }
}

bool is_normalized(std::span<const double> weights, double tolerance) noexcept {
  double total = 0.0;
  for (const double w : weights) {
    if (!std::isfinite(w) || w < 0.0) {
      return false;
    }
    total += w;
  }
  return !weights.empty() && std::abs(total - 1.0) <= tolerance;
}

WeightedParticleSet::WeightedParticleSet(ParticleSet particles, std::vector<double> weights)
    : particles_{std::move(particles)}, weights_{std::move(weights)} {
  if (particles_.size() != weights_.size()) {
    throw UsageError("weight count " + std::to_string(weights_.size()) + " does not match particle count " +
                     std::to_string(particles_.size()));
  }
  if (!is_normalized(weights_)) {
    throw UsageError("weights are not normalized");
  }
}

}  // namespace abcfuzz
