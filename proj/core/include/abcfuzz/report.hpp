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

#ifndef ABCFUZZ_REPORT_HPP
#define ABCFUZZ_REPORT_HPP

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "abcfuzz/config.hpp"
#include "abcfuzz/mcmc.hpp"
#include "abcfuzz/smc.hpp"
#include "abcfuzz/text.hpp"
#include "abcfuzz/types.hpp"

/**
 * \file
 * \brief Run artifacts: JSON reports, particle and series CSV files, plot data.
 *
 * All text outputs are comma separated with a header row and end with a
 * newline. Floating point values are written in the shortest form that reads
 * back to the identical double.
 */

namespace abcfuzz {

/// Engine version string embedded in every report.
[[nodiscard]] std::string_view engine_version() noexcept;

/// Current UTC time as ISO-8601 with second precision, e.g. 2026-01-31T12:00:00Z.
[[nodiscard]] std::string utc_timestamp();

enum class Sampler { kSmc, kMcmc };

[[nodiscard]] std::string_view to_string(Sampler sampler) noexcept;

/// Record of one CLI invocation.
struct RunReport {
  std::string engine_version;
  std::string timestamp;
  /// CLI subcommand that produced the report: gen-prior, run or compare.
  std::string command;
  /// Unset for gen-prior.
  std::optional<Sampler> sampler;
  RunConfig config_echo;
  std::uint64_t seed = 0;
  std::optional<double> prior_pass_rate;
  std::optional<double> posterior_pass_rate;
  std::uint64_t oracle_calls = 0;
  /// Sampler-specific summary block.
  nlohmann::json diagnostics = nlohmann::json::object();

  friend bool operator==(const RunReport&, const RunReport&) = default;
};

void to_json(nlohmann::json& j, const RunReport& r);
void from_json(const nlohmann::json& j, RunReport& r);

/// Write `report` as pretty-printed JSON with sorted keys. Throws EnvironmentError.
void write_report(const RunReport& report, const std::filesystem::path& path);

/// Throws EnvironmentError if unreadable, ConfigError if malformed.
[[nodiscard]] RunReport read_report(const std::filesystem::path& path);

/// Summary block for an SMC run: final ESS, weight-sum statistics, convergence heuristic.
[[nodiscard]] nlohmann::json smc_diagnostics(const SmcResult& result);

/// Summary block for an MCMC run: acceptance rate, chain length, dim-0 trace summary.
[[nodiscard]] nlohmann::json mcmc_diagnostics(const McmcResult& result, std::size_t burn_in);

/// One particle per row, header x0,x1,...
void write_particles_csv(const ParticleSet& set, const std::filesystem::path& path);

/// Inverse of write_particles_csv. A header row is optional. Throws
/// EnvironmentError if unreadable, UsageError for malformed content.
[[nodiscard]] ParticleSet read_particles_csv(const std::filesystem::path& path);

/// Columns: step,log_weight_sum,ess.
void write_smc_diagnostics_csv(const SmcResult& result, const std::filesystem::path& path);

/// Columns: step,x0,accepted.
void write_mcmc_trace_csv(const McmcResult& result, const std::filesystem::path& path);

/// Plot-data flavours. Each names the file it is written to under a run directory.
enum class PlotKind {
  kPriorHistogram,  ///< x0,in_slice per prior particle
  kDimsSurface,     ///< x1,x2,x3 per particle
  kMcmcTrace,       ///< step,x0 per chain step
  kSmcWeights,      ///< step,log_weight_sum,ess,delta per SMC step
};

[[nodiscard]] std::string_view to_string(PlotKind kind) noexcept;
/// Accepts the to_string() names. Throws UsageError.
[[nodiscard]] PlotKind parse_plot_kind(std::string_view name);
/// plot-<name>.dat
[[nodiscard]] std::string plot_file_name(PlotKind kind);

/// Particle-set plots: kPriorHistogram (membership flags from `slice`) and
/// kDimsSurface (requires at least four dimensions). Throws UsageError for
/// other kinds.
void emit_plot_data(const ParticleSet& set, PlotKind kind, const std::filesystem::path& path,
                    std::span<const std::size_t> slice = {});

/// kSmcWeights only. The delta column is empty at step 0.
void emit_plot_data(const SmcResult& result, PlotKind kind, const std::filesystem::path& path);

/// kMcmcTrace only.
void emit_plot_data(const McmcResult& result, PlotKind kind, const std::filesystem::path& path);

}  // namespace abcfuzz

#endif
