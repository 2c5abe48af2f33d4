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

#include "abcfuzz/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <type_traits>
#include <utility>

#include "abcfuzz/errors.hpp"

namespace abcfuzz {

namespace {

using nlohmann::json;

template <class T>
struct is_optional : std::false_type {};
template <class T>
struct is_optional<std::optional<T>> : std::true_type {};

/// Strict object reader: typed lookups plus a final unknown-key check.
class ObjectReader {
 public:
  ObjectReader(const json& j, std::string context) : j_{j}, context_{std::move(context)} {
    if (!j_.is_object()) {
      throw ConfigError(context_ + ": expected an object");
    }
  }

  ObjectReader(const ObjectReader&) = delete;
  ObjectReader& operator=(const ObjectReader&) = delete;

  ~ObjectReader() = default;

  template <class T>
  void read(const char* key, T& out) {
    seen_.insert(key);
    const auto it = j_.find(key);
    if (it == j_.end()) {
      return;
    }
    if constexpr (is_optional<T>::value) {
      if (it->is_null()) {
        out.reset();
        return;
      }
      typename T::value_type value{};
      convert(*it, key, value);
      out = std::move(value);
    } else {
      convert(*it, key, out);
    }
  }

  /// Mark `key` as handled by the caller.
  void skip(const char* key) { seen_.insert(key); }

  /// Throws on keys that were never read.
  void finish() const {
    for (const auto& item : j_.items()) {
      if (seen_.count(item.key()) == 0) {
        throw ConfigError(context_ + ": unknown key '" + item.key() + "'");
      }
    }
  }

 private:
  template <class T>
  void convert(const json& value, const char* key, T& out) const {
    const std::string where = context_ + "." + key;
    if constexpr (std::is_same_v<T, bool>) {
      if (!value.is_boolean()) {
        throw ConfigError(where + ": expected a boolean");
      }
      out = value.get<bool>();
    } else if constexpr (std::is_integral_v<T> && std::is_unsigned_v<T>) {
      if (!value.is_number_integer() || (!value.is_number_unsigned() && value.get<std::int64_t>() < 0)) {
        throw ConfigError(where + ": expected a nonnegative integer");
      }
      out = value.get<T>();
    } else if constexpr (std::is_floating_point_v<T>) {
      if (!value.is_number()) {
        throw ConfigError(where + ": expected a number");
      }
      out = value.get<T>();
    } else if constexpr (std::is_same_v<T, std::string>) {
      if (!value.is_string()) {
        throw ConfigError(where + ": expected a string");
      }
      out = value.get<std::string>();
    } else {
      try {
        out = value.get<T>();
      } catch (const json::exception& e) {
        throw ConfigError(where + ": " + e.what());
      }
    }
  }

  const json& j_;
  std::string context_;
  std::set<std::string> seen_;
};

void require(bool condition, const std::string& message) {
  if (!condition) {
    throw ConfigError(message);
  }
}

bool finite_nonnegative(double v) { return std::isfinite(v) && v >= 0.0; }

std::vector<double> to_vector(const Particle& p) { return {p.values().begin(), p.values().end()}; }

Particle to_particle(const std::vector<double>& values, const std::string& where) {
  try {
    return Particle(values);
  } catch (const UsageError& e) {
    throw ConfigError(where + ": " + e.what());
  }
}

}  // namespace

void PriorConfig::validate() const {
  require(n_particles >= 1, "prior.n_particles must be at least 1");
  require(n_dims >= 1, "prior.n_dims must be at least 1");
  require(std::isfinite(mean), "prior.mean must be finite");
  require(finite_nonnegative(std_dev), "prior.std_dev must be finite and nonnegative");
  require(zero_fraction >= 0.0 && zero_fraction <= 1.0, "prior.zero_fraction must lie in [0, 1]");
}

std::size_t PriorConfig::slice_count() const {
  // The nudge absorbs representation error such as 0.29 * 100 == 28.999999999999996.
  const double exact = zero_fraction * static_cast<double>(n_particles);
  const auto count = static_cast<std::size_t>(std::floor(exact + 1e-9 * std::max(1.0, exact)));
  return std::min(count, n_particles);
}

double default_scale(std::size_t dims, double prior_std) {
  const double root = std::sqrt(static_cast<double>(dims));
  return prior_std > 0.0 ? root * prior_std : root;
}

LikelihoodConfig LikelihoodConfig::defaults(std::size_t dims, double prior_std) {
  return LikelihoodConfig{Particle::zeros(dims), 1.0, default_scale(dims, prior_std)};
}

void LikelihoodConfig::validate(std::size_t dims) const {
  require(target.dims() == dims, "likelihood.target has " + std::to_string(target.dims()) +
                                     " dimensions, the run has " + std::to_string(dims));
  require(finite_nonnegative(alpha), "likelihood.alpha must be finite and nonnegative");
  require(std::isfinite(scale) && scale > 0.0, "likelihood.scale must be finite and positive");
}

void SmcConfig::validate(std::size_t dims) const {
  require(n_steps >= 1, "smc.n_steps must be at least 1");
  require(finite_nonnegative(step_std), "smc.step_std must be finite and nonnegative");
  likelihood.validate(dims);
}

void McmcConfig::validate(std::size_t dims) const {
  require(n_steps >= 1, "mcmc.n_steps must be at least 1");
  require(burn_in < n_steps, "mcmc.burn_in must be smaller than mcmc.n_steps");
  require(finite_nonnegative(step_std), "mcmc.step_std must be finite and nonnegative");
  likelihood.validate(dims);
}

void RangeOracleConfig::validate() const {
  require(std::isfinite(low) && std::isfinite(high), "oracle range bounds must be finite");
  require(low <= high, "oracle range requires low <= high");
}

void ExternalOracleConfig::validate() const {
  require(command.find_first_not_of(" \t\n") != std::string::npos, "external oracle command is empty");
  require(std::isfinite(timeout_seconds) && timeout_seconds > 0.0, "external oracle timeout must be positive");
}

LikelihoodConfig RunConfig::likelihood_config(std::size_t dims) const {
  LikelihoodConfig cfg{
      likelihood.target ? to_particle(*likelihood.target, "likelihood.target") : Particle::zeros(dims),
      likelihood.alpha,
      likelihood.scale.value_or(default_scale(dims, prior.std_dev)),
  };
  cfg.validate(dims);
  return cfg;
}

RunConfig RunConfig::resolved(std::size_t dims) const {
  RunConfig out = *this;
  const auto lik = likelihood_config(dims);
  out.likelihood.target = to_vector(lik.target);
  out.likelihood.scale = lik.scale;
  return out;
}

SmcConfig RunConfig::smc_config(std::size_t dims) const {
  SmcConfig cfg{smc.n_steps, smc.step_std, likelihood_config(dims), seed};
  cfg.validate(dims);
  return cfg;
}

McmcConfig RunConfig::mcmc_config(std::size_t dims) const {
  McmcConfig cfg{mcmc.n_steps, mcmc.burn_in, mcmc.step_std, likelihood_config(dims), mcmc.initial_index,
                 mcmc.trace_all_dims, seed};
  cfg.validate(dims);
  return cfg;
}

void to_json(json& j, const PriorConfig& c) {
  j = json{{"n_particles", c.n_particles}, {"n_dims", c.n_dims},
           {"mean", c.mean},               {"std_dev", c.std_dev},
           {"zero_fraction", c.zero_fraction}, {"seed", c.seed}};
}

void from_json(const json& j, PriorConfig& c) {
  ObjectReader r{j, "prior"};
  r.read("n_particles", c.n_particles);
  r.read("n_dims", c.n_dims);
  r.read("mean", c.mean);
  r.read("std_dev", c.std_dev);
  r.read("zero_fraction", c.zero_fraction);
  r.read("seed", c.seed);
  r.finish();
}

void to_json(json& j, const LikelihoodConfig& c) {
  j = json{{"target", to_vector(c.target)}, {"alpha", c.alpha}, {"scale", c.scale}};
}

void from_json(const json& j, LikelihoodConfig& c) {
  ObjectReader r{j, "likelihood"};
  std::vector<double> target = to_vector(c.target);
  r.read("target", target);
  r.read("alpha", c.alpha);
  r.read("scale", c.scale);
  r.finish();
  c.target = to_particle(target, "likelihood.target");
}

void to_json(json& j, const SmcConfig& c) {
  j = json{{"n_steps", c.n_steps}, {"step_std", c.step_std}, {"likelihood", c.likelihood}, {"seed", c.seed}};
}

void from_json(const json& j, SmcConfig& c) {
  ObjectReader r{j, "smc"};
  r.read("n_steps", c.n_steps);
  r.read("step_std", c.step_std);
  r.read("likelihood", c.likelihood);
  r.read("seed", c.seed);
  r.finish();
}

void to_json(json& j, const McmcConfig& c) {
  j = json{{"n_steps", c.n_steps},
           {"burn_in", c.burn_in},
           {"step_std", c.step_std},
           {"likelihood", c.likelihood},
           {"initial_index", c.initial_index ? json(*c.initial_index) : json(nullptr)},
           {"trace_all_dims", c.trace_all_dims},
           {"seed", c.seed}};
}

void from_json(const json& j, McmcConfig& c) {
  ObjectReader r{j, "mcmc"};
  r.read("n_steps", c.n_steps);
  r.read("burn_in", c.burn_in);
  r.read("step_std", c.step_std);
  r.read("likelihood", c.likelihood);
  r.read("initial_index", c.initial_index);
  r.read("trace_all_dims", c.trace_all_dims);
  r.read("seed", c.seed);
  r.finish();
}

void to_json(json& j, const RangeOracleConfig& c) {
  j = json{{"low", c.low}, {"high", c.high}, {"dimension", c.dimension}};
}

void from_json(const json& j, RangeOracleConfig& c) {
  ObjectReader r{j, "oracle.range"};
  r.read("low", c.low);
  r.read("high", c.high);
  r.read("dimension", c.dimension);
  r.finish();
}

void to_json(json& j, const ExternalOracleConfig& c) {
  j = json{{"command", c.command}, {"timeout_seconds", c.timeout_seconds}};
}

void from_json(const json& j, ExternalOracleConfig& c) {
  ObjectReader r{j, "oracle.external"};
  r.read("command", c.command);
  r.read("timeout_seconds", c.timeout_seconds);
  r.finish();
}

void to_json(json& j, const OracleSpec& c) {
  j = json{{"kind", c.kind == OracleKind::kRange ? "range" : "exec"}, {"range", c.range}, {"external", c.external}};
}

void from_json(const json& j, OracleSpec& c) {
  ObjectReader r{j, "oracle"};
  std::string kind = c.kind == OracleKind::kRange ? "range" : "exec";
  r.read("kind", kind);
  r.read("range", c.range);
  r.read("external", c.external);
  r.finish();
  if (kind == "range") {
    c.kind = OracleKind::kRange;
  } else if (kind == "exec") {
    c.kind = OracleKind::kExternal;
  } else {
    throw ConfigError("oracle.kind must be 'range' or 'exec', got '" + kind + "'");
  }
}

void to_json(json& j, const LikelihoodSpec& c) {
  j = json{{"target", c.target ? json(*c.target) : json("origin")},
           {"alpha", c.alpha},
           {"scale", c.scale ? json(*c.scale) : json(nullptr)}};
}

void from_json(const json& j, LikelihoodSpec& c) {
  ObjectReader r{j, "likelihood"};
  if (const auto it = j.find("target"); it != j.end() && (it->is_null() || *it == "origin")) {
    r.skip("target");
    c.target.reset();
  } else {
    r.read("target", c.target);
  }
  r.read("alpha", c.alpha);
  r.read("scale", c.scale);
  r.finish();
}

void to_json(json& j, const SmcSettings& c) {
  j = json{{"n_steps", c.n_steps}, {"step_std", c.step_std}};
}

void from_json(const json& j, SmcSettings& c) {
  ObjectReader r{j, "smc"};
  r.read("n_steps", c.n_steps);
  r.read("step_std", c.step_std);
  r.finish();
}

void to_json(json& j, const McmcSettings& c) {
  j = json{{"n_steps", c.n_steps},
           {"burn_in", c.burn_in},
           {"step_std", c.step_std},
           {"initial_index", c.initial_index ? json(*c.initial_index) : json(nullptr)},
           {"trace_all_dims", c.trace_all_dims}};
}

void from_json(const json& j, McmcSettings& c) {
  ObjectReader r{j, "mcmc"};
  r.read("n_steps", c.n_steps);
  r.read("burn_in", c.burn_in);
  r.read("step_std", c.step_std);
  r.read("initial_index", c.initial_index);
  r.read("trace_all_dims", c.trace_all_dims);
  r.finish();
}

void to_json(json& j, const CompareSettings& c) { j = json{{"budget", c.budget}}; }

void from_json(const json& j, CompareSettings& c) {
  ObjectReader r{j, "compare"};
  r.read("budget", c.budget);
  r.finish();
}

void to_json(json& j, const RunConfig& c) {
  j = json{{"seed", c.seed},
           {"prior", c.prior},
           {"prior_file", c.prior_file ? json(*c.prior_file) : json(nullptr)},
           {"likelihood", c.likelihood},
           {"oracle", c.oracle},
           {"smc", c.smc},
           {"mcmc", c.mcmc},
           {"compare", c.compare}};
}

void from_json(const json& j, RunConfig& c) {
  ObjectReader r{j, "config"};
  r.read("seed", c.seed);
  r.read("prior", c.prior);
  r.read("prior_file", c.prior_file);
  r.read("likelihood", c.likelihood);
  r.read("oracle", c.oracle);
  r.read("smc", c.smc);
  r.read("mcmc", c.mcmc);
  r.read("compare", c.compare);
  r.finish();
}

RunConfig parse_run_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  RunConfig cfg;
  from_json(j, cfg);
  return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in{path};
  if (!in) {
    throw EnvironmentError("cannot read config file " + path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_run_config(buffer.str());
}

}  // namespace abcfuzz
