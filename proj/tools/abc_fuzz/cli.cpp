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

#include "cli.hpp"

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <filesystem>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "abcfuzz/config.hpp"
#include "abcfuzz/errors.hpp"
#include "abcfuzz/mcmc.hpp"
#include "abcfuzz/oracle.hpp"
#include "abcfuzz/prior.hpp"
#include "abcfuzz/report.hpp"
#include "abcfuzz/smc.hpp"

namespace abcfuzz::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

/// Integer flags that must be at least one.
const CLI::Validator kAtLeastOne{
    [](std::string& value) -> std::string {
      try {
        if (std::stoll(value) >= 1) {
          return {};
        }
      } catch (const std::exception&) {
      }
      return "value must be an integer >= 1, got '" + value + "'";
    },
    "INT>=1"};

/// Binds a flag to a local value; apply() copies it into the config only when
/// the flag was given, so flags win over config-file values.
template <class T>
struct Flag {
  T value{};
  CLI::Option* option = nullptr;

  void apply(T& target) const {
    if (option != nullptr && option->count() > 0) {
      target = value;
    }
  }
  [[nodiscard]] bool given() const { return option != nullptr && option->count() > 0; }
};

struct PriorFlags {
  Flag<std::size_t> n;
  Flag<std::size_t> dims;
  Flag<double> mean;
  Flag<double> std_dev;
  Flag<double> zero_fraction;
  Flag<std::uint64_t> prior_seed;
};

struct OracleFlags {
  Flag<std::string> oracle;
  Flag<double> low;
  Flag<double> high;
  Flag<std::size_t> dimension;
  Flag<double> timeout;
};

struct LikelihoodFlags {
  Flag<double> alpha;
  Flag<double> scale;
  Flag<std::string> target;
};

struct CommonFlags {
  Flag<std::string> config;
  Flag<std::string> out;
  Flag<std::string> run_id;
  Flag<std::uint64_t> seed;
  PriorFlags prior;
  OracleFlags oracle;
};

void add_common(CLI::App& app, CommonFlags& f) {
  f.config.option = app.add_option("--config", f.config.value, "JSON run config; flags override its values");
  f.out.option = app.add_option("--out", f.out.value, "Output root (default: $ABC_FUZZ_OUT or ./out)");
  f.run_id.option = app.add_option("--run-id", f.run_id.value, "Run directory name under the output root");
  f.seed.option = app.add_option("--seed", f.seed.value, "Sampler seed; also the prior seed unless --prior-seed");

  auto& p = f.prior;
  p.n.option = app.add_option("--n", p.n.value, "Number of prior particles")->check(kAtLeastOne);
  p.dims.option = app.add_option("--dims", p.dims.value, "Particle dimensionality")->check(kAtLeastOne);
  p.mean.option = app.add_option("--mean", p.mean.value, "Prior mean");
  p.std_dev.option =
      app.add_option("--std", p.std_dev.value, "Prior standard deviation")->check(CLI::NonNegativeNumber);
  p.zero_fraction.option = app.add_option("--zero-fraction", p.zero_fraction.value,
                                          "Fraction of prior particles with x0 forced to 0")
                               ->check(CLI::Range(0.0, 1.0));
  p.prior_seed.option = app.add_option("--prior-seed", p.prior_seed.value, "Prior seed");

  auto& o = f.oracle;
  o.oracle.option = app.add_option("--oracle", o.oracle.value, "Oracle: 'range' or 'exec:<program args>'");
  o.low.option = app.add_option("--oracle-low", o.low.value, "Range oracle lower bound (inclusive)");
  o.high.option = app.add_option("--oracle-high", o.high.value, "Range oracle upper bound (inclusive)");
  o.dimension.option = app.add_option("--oracle-dim", o.dimension.value, "Coordinate checked by the range oracle");
  o.timeout.option =
      app.add_option("--oracle-timeout", o.timeout.value, "External oracle timeout in seconds")->check(CLI::PositiveNumber);
}

void add_likelihood(CLI::App& app, LikelihoodFlags& f) {
  f.alpha.option = app.add_option("--alpha", f.alpha.value, "First-coordinate penalty weight")
                       ->check(CLI::NonNegativeNumber);
  f.scale.option = app.add_option("--scale", f.scale.value, "Distance normalizer (default sqrt(dims) * std)")
                       ->check(CLI::PositiveNumber);
  f.target.option = app.add_option("--target", f.target.value, "'origin' or a CSV file holding one particle");
}

RunConfig base_config(const CommonFlags& f) {
  RunConfig cfg = f.config.given() ? load_run_config(f.config.value) : RunConfig{};
  f.seed.apply(cfg.seed);
  if (f.seed.given()) {
    cfg.prior.seed = f.seed.value;
  }
  f.prior.prior_seed.apply(cfg.prior.seed);
  f.prior.n.apply(cfg.prior.n_particles);
  f.prior.dims.apply(cfg.prior.n_dims);
  f.prior.mean.apply(cfg.prior.mean);
  f.prior.std_dev.apply(cfg.prior.std_dev);
  f.prior.zero_fraction.apply(cfg.prior.zero_fraction);

  const auto& o = f.oracle;
  if (o.oracle.given()) {
    const std::string& spec = o.oracle.value;
    if (spec == "range") {
      cfg.oracle.kind = OracleKind::kRange;
    } else if (spec.rfind("exec:", 0) == 0) {
      cfg.oracle.kind = OracleKind::kExternal;
      cfg.oracle.external.command = spec.substr(5);
    } else {
      throw ConfigError("--oracle must be 'range' or 'exec:<command>', got '" + spec + "'");
    }
  }
  o.low.apply(cfg.oracle.range.low);
  o.high.apply(cfg.oracle.range.high);
  o.dimension.apply(cfg.oracle.range.dimension);
  o.timeout.apply(cfg.oracle.external.timeout_seconds);
  return cfg;
}

void apply_likelihood(const LikelihoodFlags& f, RunConfig& cfg) {
  f.alpha.apply(cfg.likelihood.alpha);
  if (f.scale.given()) {
    cfg.likelihood.scale = f.scale.value;
  }
  if (f.target.given()) {
    if (f.target.value == "origin") {
      cfg.likelihood.target.reset();
    } else {
      const auto set = read_particles_csv(f.target.value);
      if (set.size() != 1) {
        throw ConfigError("--target file must hold exactly one particle, found " + std::to_string(set.size()));
      }
      const auto values = set[0].values();
      cfg.likelihood.target = std::vector<double>(values.begin(), values.end());
    }
  }
}

fs::path make_run_dir(const CommonFlags& f, const std::string& default_id) {
  fs::path root = "out";
  if (f.out.given()) {
    root = f.out.value;
  } else if (const char* env = std::getenv("ABC_FUZZ_OUT"); env != nullptr && *env != '\0') {
    root = env;
  }
  const fs::path dir = root / (f.run_id.given() ? f.run_id.value : default_id);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    throw EnvironmentError("cannot create output directory " + dir.string() + ": " + ec.message());
  }
  return dir;
}

RunReport make_report(const std::string& command, std::optional<Sampler> sampler, const RunConfig& cfg) {
  RunReport report;
  report.engine_version = std::string(engine_version());
  report.timestamp = utc_timestamp();
  report.command = command;
  report.sampler = sampler;
  report.config_echo = cfg;
  report.seed = cfg.seed;
  return report;
}

std::string rate(double value) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(4) << value;
  return s.str();
}

/// Prior from --prior or the prior config, plus the forced-pass slice when generated.
struct PriorInput {
  ParticleSet particles;
  std::vector<std::size_t> slice;
};

PriorInput load_prior(const RunConfig& cfg) {
  if (cfg.prior_file) {
    return {read_particles_csv(*cfg.prior_file), {}};
  }
  return {generate_prior(cfg.prior), slice_indices(cfg.prior)};
}

void write_prior_artifacts(const PriorInput& prior, const fs::path& dir) {
  write_particles_csv(prior.particles, dir / "prior.csv");
  emit_plot_data(prior.particles, PlotKind::kPriorHistogram, dir / plot_file_name(PlotKind::kPriorHistogram),
                 prior.slice);
  if (prior.particles.dims() >= 4) {
    emit_plot_data(prior.particles, PlotKind::kDimsSurface, dir / plot_file_name(PlotKind::kDimsSurface));
  }
}

int cmd_gen_prior(const CommonFlags& f, std::ostream& out) {
  RunConfig cfg = base_config(f);
  cfg.prior.validate();
  cfg = cfg.resolved(cfg.prior.n_dims);
  const auto oracle = make_oracle(cfg.oracle);

  const PriorInput prior{generate_prior(cfg.prior), slice_indices(cfg.prior)};
  const double rate_value = pass_rate(prior.particles, *oracle);

  const auto dir = make_run_dir(f, "gen-prior-seed" + std::to_string(cfg.prior.seed));
  write_prior_artifacts(prior, dir);
  std::string slice_csv = "index\n";
  for (const auto i : prior.slice) {
    slice_csv += std::to_string(i) + '\n';
  }
  {
    std::ofstream sidecar{dir / "slice.csv", std::ios::binary | std::ios::trunc};
    sidecar << slice_csv;
    if (!sidecar) {
      throw EnvironmentError("cannot write " + (dir / "slice.csv").string());
    }
  }

  auto report = make_report("gen-prior", std::nullopt, cfg);
  report.seed = cfg.prior.seed;
  report.prior_pass_rate = rate_value;
  report.oracle_calls = oracle->calls();
  report.diagnostics = json{{"n_particles", prior.particles.size()},
                            {"n_dims", prior.particles.dims()},
                            {"slice_count", prior.slice.size()},
                            {"oracle", oracle->describe()}};
  write_report(report, dir / "report.json");

  out << "gen-prior n=" << prior.particles.size() << " dims=" << prior.particles.dims()
      << " slice=" << prior.slice.size() << " prior_pass_rate=" << rate(rate_value) << " oracle="
      << oracle->describe() << " out=" << dir.string() << '\n';
  return kSuccess;
}

struct RunFlags {
  std::string sampler;
  Flag<std::string> prior_file;
  Flag<std::size_t> steps;
  Flag<std::size_t> burn_in;
  Flag<double> step_std;
  Flag<std::size_t> initial_index;
  Flag<bool> trace_all_dims;
  LikelihoodFlags likelihood;
};

int cmd_run(const CommonFlags& f, const RunFlags& r, std::ostream& out) {
  RunConfig cfg = base_config(f);
  if (r.prior_file.given()) {
    cfg.prior_file = r.prior_file.value;
  }
  apply_likelihood(r.likelihood, cfg);
  const bool smc = r.sampler == "smc";
  if (smc) {
    r.steps.apply(cfg.smc.n_steps);
    r.step_std.apply(cfg.smc.step_std);
  } else {
    r.steps.apply(cfg.mcmc.n_steps);
    r.burn_in.apply(cfg.mcmc.burn_in);
    r.step_std.apply(cfg.mcmc.step_std);
    if (r.initial_index.given()) {
      cfg.mcmc.initial_index = r.initial_index.value;
    }
    r.trace_all_dims.apply(cfg.mcmc.trace_all_dims);
  }
  if (!cfg.prior_file) {
    cfg.prior.validate();
  }

  const auto prior = load_prior(cfg);
  const std::size_t dims = prior.particles.dims();
  cfg = cfg.resolved(dims);
  const auto oracle = make_oracle(cfg.oracle);

  auto report = make_report("run", smc ? Sampler::kSmc : Sampler::kMcmc, cfg);
  const auto dir = make_run_dir(f, r.sampler + "-seed" + std::to_string(cfg.seed));

  if (smc) {
    const auto smc_cfg = cfg.smc_config(dims);
    const auto result = run_smc(prior.particles, smc_cfg, oracle.get());
    write_prior_artifacts(prior, dir);
    write_particles_csv(result.posterior, dir / "posterior.csv");
    write_smc_diagnostics_csv(result, dir / "diagnostics.csv");
    emit_plot_data(result, PlotKind::kSmcWeights, dir / plot_file_name(PlotKind::kSmcWeights));

    report.prior_pass_rate = result.prior_pass_rate;
    report.posterior_pass_rate = result.posterior_pass_rate;
    report.oracle_calls = result.oracle_calls;
    report.diagnostics = smc_diagnostics(result);
    write_report(report, dir / "report.json");

    out << "smc steps=" << smc_cfg.n_steps << " posterior=" << result.posterior.size()
        << " prior_pass_rate=" << rate(*result.prior_pass_rate)
        << " posterior_pass_rate=" << rate(*result.posterior_pass_rate) << " oracle_calls=" << result.oracle_calls
        << " out=" << dir.string() << '\n';
  } else {
    const auto mcmc_cfg = cfg.mcmc_config(dims);
    const auto result = run_mcmc(prior.particles, mcmc_cfg, oracle.get());
    write_prior_artifacts(prior, dir);
    write_particles_csv(result.chain, dir / "posterior.csv");
    write_mcmc_trace_csv(result, dir / "diagnostics.csv");
    emit_plot_data(result, PlotKind::kMcmcTrace, dir / plot_file_name(PlotKind::kMcmcTrace));
    if (result.full_trace) {
      write_particles_csv(*result.full_trace, dir / "trace-full.csv");
    }

    report.prior_pass_rate = result.prior_pass_rate;
    report.posterior_pass_rate = result.chain_pass_rate;
    report.oracle_calls = result.oracle_calls;
    report.diagnostics = mcmc_diagnostics(result, mcmc_cfg.burn_in);
    write_report(report, dir / "report.json");

    out << "mcmc steps=" << mcmc_cfg.n_steps << " burn_in=" << mcmc_cfg.burn_in
        << " chain_length=" << result.chain.size() << " acceptance_rate=" << rate(result.acceptance_rate)
        << " prior_pass_rate=" << rate(*result.prior_pass_rate)
        << " posterior_pass_rate=" << rate(*result.chain_pass_rate) << " oracle_calls=" << result.oracle_calls
        << " out=" << dir.string() << '\n';
  }
  return kSuccess;
}

struct CompareFlags {
  Flag<std::size_t> budget;
  Flag<double> step_std;
  LikelihoodFlags likelihood;
};

struct CompareRow {
  std::string method;
  std::uint64_t calls = 0;
  std::size_t found = 0;

  [[nodiscard]] double rate() const { return calls == 0 ? 0.0 : static_cast<double>(found) / static_cast<double>(calls); }
};

int cmd_compare(const CommonFlags& f, const CompareFlags& c, std::ostream& out) {
  RunConfig cfg = base_config(f);
  c.budget.apply(cfg.compare.budget);
  c.step_std.apply(cfg.smc.step_std);
  apply_likelihood(c.likelihood, cfg);
  if (cfg.compare.budget == 0) {
    throw ConfigError("compare.budget must be at least 1");
  }
  cfg.prior.validate();
  cfg = cfg.resolved(cfg.prior.n_dims);
  const std::size_t budget = cfg.compare.budget;

  // Random arm: `budget` independent draws from the same (sliced) prior distribution.
  PriorConfig baseline_prior = cfg.prior;
  baseline_prior.n_particles = budget;
  const auto baseline = generate_prior(baseline_prior);
  const auto random_oracle = make_oracle(cfg.oracle);
  CompareRow random_row{"random", 0, count_passing(baseline, *random_oracle)};
  random_row.calls = random_oracle->calls();

  // SMC arm: one oracle call per posterior particle.
  auto smc_cfg = cfg.smc_config(cfg.prior.n_dims);
  smc_cfg.n_steps = budget;
  const auto result = run_smc(generate_prior(cfg.prior), smc_cfg);
  const auto smc_oracle = make_oracle(cfg.oracle);
  CompareRow smc_row{"smc", 0, count_passing(result.posterior, *smc_oracle)};
  smc_row.calls = smc_oracle->calls();

  std::ostringstream table;
  table << std::left << std::setw(8) << "method" << std::right << std::setw(14) << "oracle_calls" << std::setw(15)
        << "passing_found" << std::setw(11) << "pass_rate" << '\n';
  std::string csv = "method,oracle_calls,passing_found,pass_rate\n";
  json arms = json::array();
  for (const auto& row : {random_row, smc_row}) {
    table << std::left << std::setw(8) << row.method << std::right << std::setw(14) << row.calls << std::setw(15)
          << row.found << std::setw(11) << rate(row.rate()) << '\n';
    csv += row.method + ',' + std::to_string(row.calls) + ',' + std::to_string(row.found) + ',' +
           format_double(row.rate()) + '\n';
    arms.push_back(json{{"method", row.method},
                        {"oracle_calls", row.calls},
                        {"passing_found", row.found},
                        {"pass_rate", row.rate()}});
  }

  const auto dir = make_run_dir(f, "compare-seed" + std::to_string(cfg.seed));
  {
    std::ofstream file{dir / "compare.csv", std::ios::binary | std::ios::trunc};
    file << csv;
    if (!file) {
      throw EnvironmentError("cannot write " + (dir / "compare.csv").string());
    }
  }
  write_particles_csv(result.posterior, dir / "posterior.csv");
  write_smc_diagnostics_csv(result, dir / "diagnostics.csv");
  emit_plot_data(result, PlotKind::kSmcWeights, dir / plot_file_name(PlotKind::kSmcWeights));

  auto report = make_report("compare", Sampler::kSmc, cfg);
  report.prior_pass_rate = random_row.rate();
  report.posterior_pass_rate = smc_row.rate();
  report.oracle_calls = random_row.calls + smc_row.calls;
  report.diagnostics = json{{"budget", budget}, {"arms", arms}, {"smc", smc_diagnostics(result)}};
  write_report(report, dir / "report.json");

  out << table.str();
  return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Likelihood-directed fuzz-input inference with SMC and MCMC samplers", "abc-fuzz"};
  app.require_subcommand(1);

  CommonFlags gen_flags;
  auto* gen = app.add_subcommand("gen-prior", "Generate the Gaussian prior with its forced-pass slice");
  add_common(*gen, gen_flags);

  CommonFlags run_common;
  RunFlags run_flags;
  auto* run_cmd = app.add_subcommand("run", "Run the SMC or MCMC sampler and write run artifacts");
  run_cmd->add_option("sampler", run_flags.sampler, "smc or mcmc")->required()->check(CLI::IsMember({"smc", "mcmc"}));
  add_common(*run_cmd, run_common);
  run_flags.prior_file.option =
      run_cmd->add_option("--prior", run_flags.prior_file.value, "Particle CSV used as the prior");
  run_flags.steps.option =
      run_cmd->add_option("--steps", run_flags.steps.value, "Sampler steps")->check(kAtLeastOne);
  run_flags.burn_in.option = run_cmd->add_option("--burn-in", run_flags.burn_in.value, "MCMC burn-in steps");
  run_flags.step_std.option = run_cmd->add_option("--step-std", run_flags.step_std.value, "Random-walk proposal std")
                                  ->check(CLI::NonNegativeNumber);
  run_flags.initial_index.option =
      run_cmd->add_option("--initial-index", run_flags.initial_index.value, "MCMC starting prior particle");
  run_flags.trace_all_dims.option =
      run_cmd->add_flag("--trace-all-dims", run_flags.trace_all_dims.value, "MCMC: also write every state to trace-full.csv");
  add_likelihood(*run_cmd, run_flags.likelihood);

  CommonFlags cmp_common;
  CompareFlags cmp_flags;
  auto* cmp = app.add_subcommand("compare", "Random prior sampling vs SMC under one oracle-call budget");
  add_common(*cmp, cmp_common);
  cmp_flags.budget.option = cmp->add_option("--budget", cmp_flags.budget.value, "Oracle calls per method")
                                ->check(kAtLeastOne);
  cmp_flags.step_std.option =
      cmp->add_option("--step-std", cmp_flags.step_std.value, "SMC random-walk std")->check(CLI::NonNegativeNumber);
  add_likelihood(*cmp, cmp_flags.likelihood);

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) {
    argv.push_back(a.c_str());
  }

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsage;
  }

  try {
    if (gen->parsed()) {
      return cmd_gen_prior(gen_flags, out);
    }
    if (run_cmd->parsed()) {
      return cmd_run(run_common, run_flags, out);
    }
    return cmd_compare(cmp_common, cmp_flags, out);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kUsage;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const EnvironmentError& e) {
    err << "environment error: " << e.what() << '\n';
    return kEnvironment;
  } catch (const NumericalError& e) {
    err << "numerical degeneracy: " << e.what() << '\n';
    return kDegenerate;
  } catch (const fs::filesystem_error& e) {
    err << "environment error: " << e.what() << '\n';
    return kEnvironment;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kEnvironment;
  }
}

}  // namespace abcfuzz::cli
