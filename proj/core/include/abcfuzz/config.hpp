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

#ifndef ABCFUZZ_CONFIG_HPP
#define ABCFUZZ_CONFIG_HPP

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "abcfuzz/types.hpp"

/**
 * \file
 * \brief Configuration records and their JSON representation.
 *
 * Every record serializes to a JSON object. Parsing is strict: unknown keys
 * and wrongly typed values raise ConfigError, missing keys keep their
 * defaults. See docs/config.md for a complete example file.
 */

namespace abcfuzz {

/// Gaussian prior population with a slice whose first coordinate is forced to zero.
struct PriorConfig {
  std::size_t n_particles = 10;
  std::size_t n_dims = 100;
  double mean = 0.0;
  double std_dev = 10.0;
  double zero_fraction = 0.3;
  std::uint64_t seed = 0;

  /// Throws ConfigError.
  void validate() const;

  /// floor(zero_fraction * n_particles).
  [[nodiscard]] std::size_t slice_count() const;

  friend bool operator==(const PriorConfig&, const PriorConfig&) = default;
};

/// Directed log-likelihood parameters: target point, first-coordinate penalty
/// weight and distance normalizer.
struct LikelihoodConfig {
  Particle target = Particle::zeros(1);
  double alpha = 1.0;
  double scale = 1.0;

  /// Origin target, alpha = 1 and scale = default_scale(dims, prior_std).
  static LikelihoodConfig defaults(std::size_t dims, double prior_std);

  /// Throws ConfigError on a dimension mismatch, negative alpha or non-positive scale.
  void validate(std::size_t dims) const;

  friend bool operator==(const LikelihoodConfig&, const LikelihoodConfig&) = default;
};

/// sqrt(dims) * prior_std, or sqrt(dims) when prior_std is zero.
[[nodiscard]] double default_scale(std::size_t dims, double prior_std);

struct SmcConfig {
  std::size_t n_steps = 1000;
  double step_std = 0.5;
  LikelihoodConfig likelihood;
  std::uint64_t seed = 0;

  void validate(std::size_t dims) const;

  friend bool operator==(const SmcConfig&, const SmcConfig&) = default;
};

struct McmcConfig {
  std::size_t n_steps = 1000;
  std::size_t burn_in = 100;
  double step_std = 0.5;
  LikelihoodConfig likelihood;
  /// Starting prior particle; drawn uniformly from the run's source when unset.
  std::optional<std::size_t> initial_index;
  /// Record every coordinate of every state, not only the first.
  bool trace_all_dims = false;
  std::uint64_t seed = 0;

  void validate(std::size_t dims) const;

  friend bool operator==(const McmcConfig&, const McmcConfig&) = default;
};

/// White-box oracle: passes when low <= p[dimension] <= high.
struct RangeOracleConfig {
  double low = -0.5;
  double high = 0.5;
  std::size_t dimension = 0;

  void validate() const;

  friend bool operator==(const RangeOracleConfig&, const RangeOracleConfig&) = default;
};

/// Black-box oracle: an executable whose exit status is the verdict.
struct ExternalOracleConfig {
  /// Program and arguments separated by whitespace; no shell is involved.
  std::string command;
  double timeout_seconds = 5.0;

  void validate() const;

  friend bool operator==(const ExternalOracleConfig&, const ExternalOracleConfig&) = default;
};

enum class OracleKind { kRange, kExternal };

struct OracleSpec {
  OracleKind kind = OracleKind::kRange;
  RangeOracleConfig range;
  ExternalOracleConfig external;

  friend bool operator==(const OracleSpec&, const OracleSpec&) = default;
};

/// Likelihood settings as written in a config file, before the run
/// dimensionality is known.
struct LikelihoodSpec {
  /// Unset means the origin.
  std::optional<std::vector<double>> target;
  double alpha = 1.0;
  /// Unset means default_scale().
  std::optional<double> scale;

  friend bool operator==(const LikelihoodSpec&, const LikelihoodSpec&) = default;
};

struct SmcSettings {
  std::size_t n_steps = 1000;
  double step_std = 0.5;

  friend bool operator==(const SmcSettings&, const SmcSettings&) = default;
};

struct McmcSettings {
  std::size_t n_steps = 1000;
  std::size_t burn_in = 100;
  double step_std = 0.5;
  std::optional<std::size_t> initial_index;
  bool trace_all_dims = false;

  friend bool operator==(const McmcSettings&, const McmcSettings&) = default;
};

struct CompareSettings {
  std::size_t budget = 2000;

  friend bool operator==(const CompareSettings&, const CompareSettings&) = default;
};

/// Everything one CLI invocation needs. This is the config file schema.
struct RunConfig {
  /// Sampler seed. The prior has its own seed in `prior.seed`.
  std::uint64_t seed = 0;
  PriorConfig prior;
  /// Particle CSV used instead of generating a prior.
  std::optional<std::string> prior_file;
  LikelihoodSpec likelihood;
  OracleSpec oracle;
  SmcSettings smc;
  McmcSettings mcmc;
  CompareSettings compare;

  /// Fill unset likelihood fields for a run of the given dimensionality.
  [[nodiscard]] RunConfig resolved(std::size_t dims) const;

  [[nodiscard]] LikelihoodConfig likelihood_config(std::size_t dims) const;
  [[nodiscard]] SmcConfig smc_config(std::size_t dims) const;
  [[nodiscard]] McmcConfig mcmc_config(std::size_t dims) const;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

void to_json(nlohmann::json& j, const PriorConfig& c);
void from_json(const nlohmann::json& j, PriorConfig& c);
void to_json(nlohmann::json& j, const LikelihoodConfig& c);
void from_json(const nlohmann::json& j, LikelihoodConfig& c);
void to_json(nlohmann::json& j, const SmcConfig& c);
void from_json(const nlohmann::json& j, SmcConfig& c);
void to_json(nlohmann::json& j, const McmcConfig& c);
void from_json(const nlohmann::json& j, McmcConfig& c);
void to_json(nlohmann::json& j, const RangeOracleConfig& c);
void from_json(const nlohmann::json& j, RangeOracleConfig& c);
void to_json(nlohmann::json& j, const ExternalOracleConfig& c);
void from_json(const nlohmann::json& j, ExternalOracleConfig& c);
void to_json(nlohmann::json& j, const OracleSpec& c);
void from_json(const nlohmann::json& j, OracleSpec& c);
void to_json(nlohmann::json& j, const LikelihoodSpec& c);
void from_json(const nlohmann::json& j, LikelihoodSpec& c);
void to_json(nlohmann::json& j, const SmcSettings& c);
void from_json(const nlohmann::json& j, SmcSettings& c);
void to_json(nlohmann::json& j, const McmcSettings& c);
void from_json(const nlohmann::json& j, McmcSettings& c);
void to_json(nlohmann::json& j, const CompareSettings& c);
void from_json(const nlohmann::json& j, CompareSettings& c);
void to_json(nlohmann::json& j, const RunConfig& c);
void from_json(const nlohmann::json& j, RunConfig& c);

/// Parse a RunConfig from JSON text. Throws ConfigError.
[[nodiscard]] RunConfig parse_run_config(const std::string& text);

/// Read a RunConfig file. Throws EnvironmentError if unreadable, ConfigError if invalid.
[[nodiscard]] RunConfig load_run_config(const std::filesystem::path& path);

}  // namespace abcfuzz

#endif
