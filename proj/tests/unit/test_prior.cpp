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

#include <gtest/gtest.h>

#include <bit>
#include <cmath>

#include "abcfuzz/errors.hpp"
#include "abcfuzz/prior.hpp"

namespace {

using abcfuzz::PriorConfig;

TEST(GeneratePrior, ReferenceConfiguration) {
  const PriorConfig cfg{10, 100, 0.0, 10.0, 0.3, 7};
  const auto prior = abcfuzz::generate_prior(cfg);
  ASSERT_EQ(prior.size(), 10U);
  ASSERT_EQ(prior.dims(), 100U);
  for (std::size_t i = 0; i < 10; ++i) {
    if (i < 3) {
      EXPECT_EQ(prior[i][0], 0.0) << i;
    } else {
      EXPECT_NE(prior[i][0], 0.0) << i;
    }
  }
}

TEST(GeneratePrior, DegenerateGaussian) {
  const auto prior = abcfuzz::generate_prior(PriorConfig{4, 6, 5.0, 0.0, 0.0, 1});
  for (const auto& p : prior) {
    for (const double x : p.values()) {
      EXPECT_EQ(x, 5.0);
    }
  }
}

TEST(GeneratePrior, PerDimensionSpread) {
  const auto prior = abcfuzz::generate_prior(PriorConfig{10000, 3, 0.0, 10.0, 0.0, 3});
  for (std::size_t d = 0; d < 3; ++d) {
    double sum = 0.0;
    double squares = 0.0;
    for (const auto& p : prior) {
      sum += p[d];
      squares += p[d] * p[d];
    }
    const double n = static_cast<double>(prior.size());
    const double mean = sum / n;
    const double sd = std::sqrt((squares - n * mean * mean) / (n - 1.0));
    EXPECT_NEAR(sd, 10.0, 0.2) << "dimension " << d;
  }
}

TEST(GeneratePrior, BitwiseReproducible) {
  const PriorConfig cfg{25, 8, 1.0, 2.0, 0.4, 123};
  const auto a = abcfuzz::generate_prior(cfg);
  const auto b = abcfuzz::generate_prior(cfg);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t d = 0; d < a.dims(); ++d) {
      ASSERT_EQ(std::bit_cast<std::uint64_t>(a[i][d]), std::bit_cast<std::uint64_t>(b[i][d]));
    }
  }
  auto other = cfg;
  other.seed = 124;
  EXPECT_NE(abcfuzz::generate_prior(other), a);
}

TEST(GeneratePrior, RowMajorOrder) {
  // The unsliced coordinates of particle i do not depend on how many particles follow it.
  const auto small = abcfuzz::generate_prior(PriorConfig{2, 5, 0.0, 1.0, 0.0, 9});
  const auto large = abcfuzz::generate_prior(PriorConfig{6, 5, 0.0, 1.0, 0.0, 9});
  EXPECT_EQ(small[0], large[0]);
  EXPECT_EQ(small[1], large[1]);
}

TEST(GeneratePrior, ExactSliceCountProperty) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const PriorConfig cfg{1 + seed % 37, 1 + seed % 5, 0.0, 3.0, static_cast<double>(seed % 11) / 10.0, seed};
    const auto prior = abcfuzz::generate_prior(cfg);
    std::size_t zeros = 0;
    for (const auto& p : prior) {
      zeros += p[0] == 0.0 ? 1 : 0;
    }
    ASSERT_EQ(zeros, cfg.slice_count()) << "seed " << seed;
  }
}

TEST(GeneratePrior, InvalidConfig) {
  EXPECT_THROW((void)abcfuzz::generate_prior(PriorConfig{0, 10, 0.0, 1.0, 0.0, 0}), abcfuzz::ConfigError);
  EXPECT_THROW((void)abcfuzz::generate_prior(PriorConfig{10, 0, 0.0, 1.0, 0.0, 0}), abcfuzz::ConfigError);
}

TEST(SliceIndices, Examples) {
  using V = std::vector<std::size_t>;
  EXPECT_EQ(abcfuzz::slice_indices(PriorConfig{10, 100, 0.0, 10.0, 0.3, 0}), (V{0, 1, 2}));
  EXPECT_EQ(abcfuzz::slice_indices(PriorConfig{10, 100, 0.0, 10.0, 0.0, 0}), V{});
  EXPECT_EQ(abcfuzz::slice_indices(PriorConfig{7, 1, 0.0, 1.0, 0.5, 0}), (V{0, 1, 2}));
  EXPECT_EQ(abcfuzz::slice_indices(PriorConfig{4, 1, 0.0, 1.0, 1.0, 0}), (V{0, 1, 2, 3}));
}

}  // namespace
