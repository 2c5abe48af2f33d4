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

#ifndef ABCFUZZ_ORACLE_HPP
#define ABCFUZZ_ORACLE_HPP

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "abcfuzz/config.hpp"
#include "abcfuzz/types.hpp"

/**
 * \file
 * \brief Fuzz-test target functions.
 *
 * An oracle turns a particle into a pass/fail verdict. The range oracle is the
 * white-box check on one coordinate. The external oracle runs a program: the
 * particle is written to its standard input as one ASCII float per line
 * (shortest round-trip form, newline terminated, then EOF) and exit status 0
 * means pass.
 */

namespace abcfuzz {

struct OracleVerdict {
  bool passed = false;

  friend bool operator==(const OracleVerdict&, const OracleVerdict&) = default;
};

/// Inclusive interval check on one coordinate. Throws UsageError when
/// `cfg.dimension` is out of range for `p`.
[[nodiscard]] OracleVerdict range_oracle_evaluate(const Particle& p, const RangeOracleConfig& cfg);

/// Run `cfg.command` once with `p` on standard input.
///
/// Throws EnvironmentError when the program cannot be started and
/// TimeoutError when it outlives `cfg.timeout_seconds` (the child is killed).
[[nodiscard]] OracleVerdict external_oracle_evaluate(const Particle& p, const ExternalOracleConfig& cfg);

/// Polymorphic oracle that counts its evaluations.
class Oracle {
 public:
  virtual ~Oracle() = default;

  OracleVerdict evaluate(const Particle& p) const {
    calls_.fetch_add(1, std::memory_order_relaxed);
    return do_evaluate(p);
  }

  [[nodiscard]] std::uint64_t calls() const noexcept { return calls_.load(std::memory_order_relaxed); }
  [[nodiscard]] virtual std::string describe() const = 0;

 protected:
  Oracle() = default;
  Oracle(const Oracle&) = delete;
  Oracle& operator=(const Oracle&) = delete;

 private:
  virtual OracleVerdict do_evaluate(const Particle& p) const = 0;

  mutable std::atomic<std::uint64_t> calls_{0};
};

class RangeOracle final : public Oracle {
 public:
  explicit RangeOracle(RangeOracleConfig cfg = {});

  [[nodiscard]] const RangeOracleConfig& config() const noexcept { return cfg_; }
  [[nodiscard]] std::string describe() const override;

 private:
  OracleVerdict do_evaluate(const Particle& p) const override;

  RangeOracleConfig cfg_;
};

class ExternalOracle final : public Oracle {
 public:
  explicit ExternalOracle(ExternalOracleConfig cfg);

  [[nodiscard]] const ExternalOracleConfig& config() const noexcept { return cfg_; }
  [[nodiscard]] std::string describe() const override;

 private:
  OracleVerdict do_evaluate(const Particle& p) const override;

  ExternalOracleConfig cfg_;
};

/// Build the oracle selected by `spec`.
[[nodiscard]] std::unique_ptr<Oracle> make_oracle(const OracleSpec& spec);

/// Number of particles in `set` that pass.
[[nodiscard]] std::size_t count_passing(const ParticleSet& set, const Oracle& oracle);

/// Fraction of `set` that passes. Throws UsageError for an empty set.
[[nodiscard]] double pass_rate(const ParticleSet& set, const Oracle& oracle);

}  // namespace abcfuzz

#endif
