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

#ifndef ABCFUZZ_LIKELIHOOD_HPP
#define ABCFUZZ_LIKELIHOOD_HPP

#include <vector>

#include "abcfuzz/config.hpp"
#include "abcfuzz/types.hpp"

namespace abcfuzz {

/// Directed log-likelihood
///
///     log L(p) = -||p - target||_2 / scale - alpha * |p[0]|
///
/// Zero is the global maximum, reached at p == target with p[0] == 0.
/// Throws UsageError when `p` and `cfg.target` differ in dimensionality.
[[nodiscard]] double log_likelihood(const Particle& p, const LikelihoodConfig& cfg);

/// Elementwise log_likelihood over `set`, in order. Throws UsageError for an empty set.
[[nodiscard]] std::vector<double> log_likelihood_batch(const ParticleSet& set, const LikelihoodConfig& cfg);

}  // namespace abcfuzz

#endif
