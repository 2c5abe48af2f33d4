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

#include "abcfuzz/prior.hpp"

#include <numeric>

#include "abcfuzz/random.hpp"

namespace abcfuzz {

ParticleSet generate_prior(const PriorConfig& config) {
  config.validate();
  RandomSource rng{config.seed, Stream::kPrior};
  const std::size_t sliced = config.slice_count();

  std::vector<Particle> particles;
  particles.reserve(config.n_particles);
  std::vector<double> row(config.n_dims);
  for (std::size_t i = 0; i < config.n_particles; ++i) {
    for (auto& value : row) {
      value = rng.normal(config.mean, config.std_dev);
    }
    if (i < sliced) {
      row[0] = 0.0;
    }
    particles.emplace_back(row);
  }
  return ParticleSet(std::move(particles));
}

std::vector<std::size_t> slice_indices(const PriorConfig& config) {
  config.validate();
  std::vector<std::size_t> indices(config.slice_count());
  std::iota(indices.begin(), indices.end(), std::size_t{0});
  return indices;
}

}  // namespace abcfuzz
