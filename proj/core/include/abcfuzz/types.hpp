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

#ifndef ABCFUZZ_TYPES_HPP
#define ABCFUZZ_TYPES_HPP

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

/**
 * \file
 * \brief Particle containers shared by the samplers.
 */

namespace abcfuzz {

/// A candidate fuzz input: a nonempty vector of finite reals.
class Particle {
 public:
  /// Throws UsageError when `values` is empty or holds NaN/Inf.
  explicit Particle(std::vector<double> values);
  Particle(std::initializer_list<double> values) : Particle(std::vector<double>(values)) {}

  /// All-zeros particle of the given dimensionality.
  static Particle zeros(std::size_t dims);

  [[nodiscard]] std::size_t dims() const noexcept { return values_.size(); }
  [[nodiscard]] double operator[](std::size_t i) const noexcept { return values_[i]; }
  [[nodiscard]] std::span<const double> values() const noexcept { return values_; }

  friend bool operator==(const Particle&, const Particle&) = default;

 private:
  std::vector<double> values_;
};

/// A population of particles sharing one dimensionality.
///
/// May be empty; samplers and pass-rate computations reject empty sets.
class ParticleSet {
 public:
  ParticleSet() = default;
  /// Throws UsageError on mixed dimensionality.
  explicit ParticleSet(std::vector<Particle> particles);

  [[nodiscard]] std::size_t size() const noexcept { return particles_.size(); }
  [[nodiscard]] bool empty() const noexcept { return particles_.empty(); }
  /// Shared dimensionality, 0 for an empty set.
  [[nodiscard]] std::size_t dims() const noexcept { return particles_.empty() ? 0 : particles_.front().dims(); }

  [[nodiscard]] const Particle& operator[](std::size_t i) const noexcept { return particles_[i]; }
  [[nodiscard]] std::span<const Particle> particles() const noexcept { return particles_; }
  [[nodiscard]] auto begin() const noexcept { return particles_.begin(); }
  [[nodiscard]] auto end() const noexcept { return particles_.end(); }

  friend bool operator==(const ParticleSet&, const ParticleSet&) = default;

 private:
  std::vector<Particle> particles_;
};

/// Absolute tolerance on the total of a normalized weight vector.
inline constexpr double kWeightSumTolerance = 1e-9;

/// True if every weight is finite and nonnegative and they sum to one within `tolerance`.
[[nodiscard]] bool is_normalized(std::span<const double> weights, double tolerance = kWeightSumTolerance) noexcept;

/// Particles paired with normalized importance weights.
class WeightedParticleSet {
 public:
  /// Throws UsageError on length mismatch or unnormalized weights.
  WeightedParticleSet(ParticleSet particles, std::vector<double> weights);

  [[nodiscard]] const ParticleSet& particles() const noexcept { return particles_; }
  [[nodiscard]] std::span<const double> weights() const noexcept { return weights_; }
  [[nodiscard]] std::size_t size() const noexcept { return particles_.size(); }

  friend bool operator==(const WeightedParticleSet&, const WeightedParticleSet&) = default;

 private:
  ParticleSet particles_;
  std::vector<double> weights_;
};

}  // namespace abcfuzz

#endif
