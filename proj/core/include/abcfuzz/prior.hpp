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

#ifndef ABCFUZZ_PRIOR_HPP
#define ABCFUZZ_PRIOR_HPP

#include <cstddef>
#include <vector>

#include "abcfuzz/config.hpp"
#include "abcfuzz/types.hpp"

namespace abcfuzz {

/// Draw `n_particles` rows of `n_dims` Normal(mean, std_dev^2) values, row-major,
/// from RandomSource(config.seed, Stream::kPrior). The first
/// `config.slice_count()` particles then get coordinate 0 set to exactly 0.0.
///
/// Throws ConfigError for an invalid config.
[[nodiscard]] ParticleSet generate_prior(const PriorConfig& config);

/// Indices {0, ..., slice_count - 1} of the particles whose first coordinate was zeroed.
[[nodiscard]] std::vector<std::size_t> slice_indices(const PriorConfig& config);

}  // namespace abcfuzz

#endif
