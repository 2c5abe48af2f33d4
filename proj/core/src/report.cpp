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

#include "abcfuzz/report.hpp"

#include <algorithm>
#include <ctime>
#include <fstream>
#include <numeric>
#include <sstream>

#include "abcfuzz/diagnostics.hpp"
#include "abcfuzz/errors.hpp"

namespace abcfuzz {

namespace {

using nlohmann::json;

void write_text(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out{path, std::ios::binary | std::ios::trunc};
  if (!out) {
    throw EnvironmentError("cannot open " + path.string() + " for writing");
  }
  out << content;
  out.flush();
  if (!out) {
    throw EnvironmentError("failed writing " + path.string());
  }
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in{path, std::ios::binary};
  if (!in) {
    throw EnvironmentError("cannot read " + path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

json optional_number(const std::optional<double>& value) { return value ? json(*value) : json(nullptr); }

std::optional<double> read_optional_number(const json& j, const char* key) {
  const auto& value = j.at(key);
  if (value.is_null()) {
    return std::nullopt;
  }
  if (!value.is_number()) {
    throw ConfigError(std::string("report.") + key + ": expected a number or null");
  }
  return value.get<double>();
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    fields.push_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    if (comma == std::string_view::npos) {
      return fields;
    }
    start = comma + 1;
  }
}

std::string particle_header(std::size_t dims) {
  std::string header;
  for (std::size_t d = 0; d < dims; ++d) {
    header += (d == 0 ? "x" : ",x") + std::to_string(d);
  }
  return header + '\n';
}

void append_row(std::string& out, std::span<const double> values) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) {
      out += ',';
    }
    out += format_double(values[i]);
  }
  out += '\n';
}

void require_kind(PlotKind actual, std::initializer_list<PlotKind> allowed, const char* source) {
  if (std::find(allowed.begin(), allowed.end(), actual) == allowed.end()) {
    throw UsageError("plot kind '" + std::string(to_string(actual)) + "' cannot be produced from " + source);
  }
}

}  // namespace

std::string_view engine_version() noexcept { return ABCFUZZ_VERSION; }

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm utc{};
  gmtime_r(&now, &utc);
  char buffer[32];
  std::strftime(buffer, sizeof buffer, "%Y-%m-%dT%H:%M:%SZ", &utc);
  return buffer;
}

std::string_view to_string(Sampler sampler) noexcept { return sampler == Sampler::kSmc ? "smc" : "mcmc"; }

void to_json(json& j, const RunReport& r) {
  j = json{{"engine_version", r.engine_version},
           {"timestamp", r.timestamp},
           {"command", r.command},
           {"sampler", r.sampler ? json(to_string(*r.sampler)) : json(nullptr)},
           {"config", r.config_echo},
           {"seed", r.seed},
           {"prior_pass_rate", optional_number(r.prior_pass_rate)},
           {"posterior_pass_rate", optional_number(r.posterior_pass_rate)},
           {"oracle_calls", r.oracle_calls},
           {"diagnostics", r.diagnostics}};
}

void from_json(const json& j, RunReport& r) {
  try {
    static constexpr std::array kKeys{"engine_version", "timestamp",           "command",      "sampler",    "config",
                                      "seed",           "prior_pass_rate",     "posterior_pass_rate",
                                      "oracle_calls",   "diagnostics"};
    for (const auto& item : j.items()) {
      if (std::find(kKeys.begin(), kKeys.end(), item.key()) == kKeys.end()) {
        throw ConfigError("report: unknown key '" + item.key() + "'");
      }
    }
    r.engine_version = j.at("engine_version").get<std::string>();
    r.timestamp = j.at("timestamp").get<std::string>();
    r.command = j.at("command").get<std::string>();
    const auto& sampler = j.at("sampler");
    if (sampler.is_null()) {
      r.sampler.reset();
    } else if (sampler == "smc") {
      r.sampler = Sampler::kSmc;
    } else if (sampler == "mcmc") {
      r.sampler = Sampler::kMcmc;
    } else {
      throw ConfigError("report.sampler must be smc, mcmc or null");
    }
    r.config_echo = j.at("config").get<RunConfig>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.prior_pass_rate = read_optional_number(j, "prior_pass_rate");
    r.posterior_pass_rate = read_optional_number(j, "posterior_pass_rate");
    r.oracle_calls = j.at("oracle_calls").get<std::uint64_t>();
    r.diagnostics = j.at("diagnostics");
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed report: ") + e.what());
  }
}

void write_report(const RunReport& report, const std::filesystem::path& path) {
  write_text(path, json(report).dump(2) + '\n');
}

RunReport read_report(const std::filesystem::path& path) {
  json j;
  try {
    j = json::parse(read_text(path));
  } catch (const json::parse_error& e) {
    throw ConfigError("report " + path.string() + " is not valid JSON: " + e.what());
  }
  return j.get<RunReport>();
}

json smc_diagnostics(const SmcResult& result) {
  json out = json::object();
  out["steps"] = result.weight_sum_series.size();
  if (result.final_population) {
    out["population_size"] = result.final_population->size();
  }
  if (!result.ess_series.empty()) {
    const auto& ess = result.ess_series;
    out["final_ess"] = ess.back();
    out["min_ess"] = *std::min_element(ess.begin(), ess.end());
    out["mean_ess"] = std::accumulate(ess.begin(), ess.end(), 0.0) / static_cast<double>(ess.size());
    out["final_log_weight_sum"] = result.weight_sum_series.back();
  }
  if (result.weight_sum_series.size() >= 2) {
    const auto deltas = weight_sum_delta_series(result.weight_sum_series);
    const auto heuristic = assess_convergence(deltas);
    out["weight_update"] = json{{"heuristic", true},
                                {"rule", "tail 10% mean delta < 0.1 * head 10% mean delta"},
                                {"converging", heuristic.converging},
                                {"head_mean", heuristic.head_mean},
                                {"tail_mean", heuristic.tail_mean},
                                {"window", heuristic.window}};
  }
  return out;
}

json mcmc_diagnostics(const McmcResult& result, std::size_t burn_in) {
  json out = json::object();
  out["acceptance_rate"] = result.acceptance_rate;
  out["chain_length"] = result.chain.size();
  out["steps"] = result.trace_dim0.size();
  out["burn_in"] = burn_in;
  out["initial_index"] = result.initial_index;
  if (result.trace_dim0.size() >= burn_in + 2) {
    const auto s = trace_summary(result.trace_dim0, burn_in);
    out["trace_dim0"] = json{{"count", s.count}, {"mean", s.mean}, {"std_dev", s.std_dev}, {"min", s.min}, {"max", s.max}};
  }
  return out;
}

void write_particles_csv(const ParticleSet& set, const std::filesystem::path& path) {
  std::string out = particle_header(set.dims());
  for (const auto& p : set) {
    append_row(out, p.values());
  }
  write_text(path, out);
}

ParticleSet read_particles_csv(const std::filesystem::path& path) {
  std::istringstream in{read_text(path)};
  std::vector<Particle> particles;
  std::size_t line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    if (line.find_first_not_of(" \t") == std::string::npos) {
      continue;
    }
    const auto fields = split_fields(line);
    if (particles.empty() && line_no == 1 && line.find_first_of("xX") != std::string::npos) {
      continue;
    }
    std::vector<double> values;
    values.reserve(fields.size());
    try {
      for (const auto field : fields) {
        values.push_back(parse_double(field));
      }
      particles.emplace_back(std::move(values));
    } catch (const UsageError& e) {
      throw UsageError(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  try {
    return ParticleSet(std::move(particles));
  } catch (const UsageError& e) {
    throw UsageError(path.string() + ": " + e.what());
  }
}

void write_smc_diagnostics_csv(const SmcResult& result, const std::filesystem::path& path) {
  std::string out = "step,log_weight_sum,ess\n";
  for (std::size_t k = 0; k < result.weight_sum_series.size(); ++k) {
    out += std::to_string(k) + ',' + format_double(result.weight_sum_series[k]) + ',' +
           format_double(result.ess_series[k]) + '\n';
  }
  write_text(path, out);
}

void write_mcmc_trace_csv(const McmcResult& result, const std::filesystem::path& path) {
  std::string out = "step,x0,accepted\n";
  for (std::size_t k = 0; k < result.trace_dim0.size(); ++k) {
    out += std::to_string(k) + ',' + format_double(result.trace_dim0[k]) + ',' +
           std::to_string(result.accepted[k]) + '\n';
  }
  write_text(path, out);
}

std::string_view to_string(PlotKind kind) noexcept {
  switch (kind) {
    case PlotKind::kPriorHistogram:
      return "prior-histogram-data";
    case PlotKind::kDimsSurface:
      return "dims-1-3-surface-data";
    case PlotKind::kMcmcTrace:
      return "mcmc-trace-data";
    case PlotKind::kSmcWeights:
      return "smc-weights-data";
  }
  return "unknown";
}

PlotKind parse_plot_kind(std::string_view name) {
  for (const auto kind : {PlotKind::kPriorHistogram, PlotKind::kDimsSurface, PlotKind::kMcmcTrace, PlotKind::kSmcWeights}) {
    if (to_string(kind) == name) {
      return kind;
    }
  }
  throw UsageError("unknown plot kind '" + std::string(name) + "'");
}

std::string plot_file_name(PlotKind kind) {
  auto name = std::string(to_string(kind));
  name.resize(name.size() - std::string_view("-data").size());
  return "plot-" + name + ".dat";
}

void emit_plot_data(const ParticleSet& set, PlotKind kind, const std::filesystem::path& path,
                    std::span<const std::size_t> slice) {
  require_kind(kind, {PlotKind::kPriorHistogram, PlotKind::kDimsSurface}, "a particle set");
  if (set.empty()) {
    throw UsageError("cannot emit plot data for an empty particle set");
  }
  std::string out;
  if (kind == PlotKind::kPriorHistogram) {
    out = "x0,in_slice\n";
    for (std::size_t i = 0; i < set.size(); ++i) {
      const bool member = std::find(slice.begin(), slice.end(), i) != slice.end();
      out += format_double(set[i][0]) + (member ? ",1\n" : ",0\n");
    }
  } else {
    if (set.dims() < 4) {
      throw UsageError("surface plot data needs at least 4 dimensions, the set has " + std::to_string(set.dims()));
    }
    out = "x1,x2,x3\n";
    for (const auto& p : set) {
      append_row(out, p.values().subspan(1, 3));
    }
  }
  write_text(path, out);
}

void emit_plot_data(const SmcResult& result, PlotKind kind, const std::filesystem::path& path) {
  require_kind(kind, {PlotKind::kSmcWeights}, "an SMC result");
  std::string out = "step,log_weight_sum,ess,delta\n";
  for (std::size_t k = 0; k < result.weight_sum_series.size(); ++k) {
    out += std::to_string(k) + ',' + format_double(result.weight_sum_series[k]) + ',' +
           format_double(result.ess_series[k]) + ',';
    if (k > 0) {
      out += format_double(std::abs(result.weight_sum_series[k] - result.weight_sum_series[k - 1]));
    }
    out += '\n';
  }
  write_text(path, out);
}

void emit_plot_data(const McmcResult& result, PlotKind kind, const std::filesystem::path& path) {
  require_kind(kind, {PlotKind::kMcmcTrace}, "an MCMC result");
  std::string out = "step,x0\n";
  for (std::size_t k = 0; k < result.trace_dim0.size(); ++k) {
    out += std::to_string(k) + ',' + format_double(result.trace_dim0[k]) + '\n';
  }
  write_text(path, out);
}

}  // namespace abcfuzz
