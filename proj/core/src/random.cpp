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

#include "abcfuzz/random.hpp"

#include <cmath>
#include <numbers>

namespace abcfuzz {

namespace {

std::mt19937_64 make_engine(std::uint64_t seed, Stream stream) {
  std::seed_seq seq{
      static_cast<std::uint32_t>(seed & 0xffffffffU),
      static_cast<std::uint32_t>(seed >> 32U),
      static_cast<std::uint32_t>(stream),
  };
  return std::mt19937_64{seq};
}

}  // namespace

RandomSource::RandomSource(std::uint64_t seed, Stream stream) : seed_{seed}, engine_{make_engine(seed, stream)} {}

double RandomSource::uniform() {
  return static_cast<double>(engine_() >> 11U) * 0x1.0p-53;
}

double RandomSource::normal() {
  // 1 - u1 lies in (0, 1], so the logarithm is finite.
  const double u1 = uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(1.0 - u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::size_t RandomSource::index(std::size_t n) {
  const auto i = static_cast<std::size_t>(uniform() * static_cast<double>(n));
  return i < n ? i : n - 1;
}

}  // namespace abcfuzz
