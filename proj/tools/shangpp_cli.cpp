// Copyright 2026 The shangpp Authors. All Rights Reserved.
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

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>
#include <fmt/ranges.h>

#include "shangpp/config.hpp"
#include "shangpp/csv.hpp"
#include "shangpp/harness.hpp"
#include "shangpp/verify.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitVerify = 2;
constexpr int kExitRuntime = 3;

struct CommonFlags {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  unsigned jobs = 1;
  bool quiet = false;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::optional<std::uint64_t> env_seed() {
  const char* raw = std::getenv("SHANG_SEED");
  if (raw == nullptr || *raw == '\0') return std::nullopt;
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(raw, &used, 10);
    if (used != std::string(raw).size() || std::string(raw).front() == '-') throw std::invalid_argument(raw);
    return static_cast<std::uint64_t>(v);
  } catch (const std::exception&) {
    throw UsageError(fmt::format("SHANG_SEED is not an unsigned integer: '{}'", raw));
  }
}

// --seed beats the config file, which beats SHANG_SEED.
shangpp::RunConfig load(const CommonFlags& flags) {
  if (flags.config.empty()) throw UsageError("--config is required");
  shangpp::RunConfig cfg = shangpp::load_config(flags.config);
  if (flags.seed) {
    cfg.seed = flags.seed;
  } else if (!cfg.seed) {
    cfg.seed = env_seed();
  }
  if (!flags.out.empty()) cfg.output_dir = flags.out;
  if (flags.quiet) cfg.verbosity = 0;
  return cfg;
}

void prepare_output(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw UsageError(fmt::format("cannot create output directory '{}'", dir.string()));
  }
  const fs::path probe = dir / ".shangpp-write-probe";
  {
    std::ofstream f(probe);
    if (!f) throw UsageError(fmt::format("output directory '{}' is not writable", dir.string()));
  }
  fs::remove(probe, ec);
}

void write_file(const fs::path& path, const std::function<void(std::ostream&)>& body) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error(fmt::format("cannot write '{}'", path.string()));
  body(f);
  if (!f) throw std::runtime_error(fmt::format("write failed for '{}'", path.string()));
}

int cmd_bench(const CommonFlags& flags) {
  const shangpp::RunConfig cfg = load(flags);
  const auto specs = cfg.expand();
  prepare_output(cfg.output_dir);
  for (const auto& spec : specs) {
    const shangpp::TrajectoryStats stats = shangpp::run_monte_carlo(spec, flags.jobs);
    const fs::path path = cfg.output_dir / (spec.label() + ".csv");
    write_file(path, [&](std::ostream& out) { shangpp::write_stats_csv(out, stats); });
    if (cfg.verbosity > 0) {
      double worst = 0.0;
      for (const auto& row : stats.rows) {
        if (row.n_runs > 0 && row.bound > 0.0) worst = std::max(worst, row.mean_energy / row.bound);
      }
      const std::string bound_note =
          stats.rate ? fmt::format("max energy/bound {:.4g}", worst) : std::string("no rate envelope");
      fmt::print("{}: final mean subopt {:.6g}, diverged {}/{}, {} -> {}\n", spec.label(),
                 stats.final_mean_subopt, stats.diverged_runs, stats.total_runs, bound_note,
                 path.string());
    }
  }
  return kExitOk;
}

int cmd_sweep(const CommonFlags& flags) {
  const shangpp::RunConfig cfg = load(flags);
  const std::vector<double> sigmas = cfg.sweep_sigmas.value_or(cfg.sigmas);
  auto specs = cfg.expand();
  prepare_output(cfg.output_dir);
  for (const auto& problem : cfg.problems) {
    for (const auto& method : cfg.methods) {
      shangpp::ExperimentSpec base;
      for (const auto& s : specs) {
        if (s.problem.label() == problem.label() && s.method.label() == method.label()) {
          base = s;
          break;
        }
      }
      std::vector<shangpp::SweepRow> rows;
      try {
        rows = shangpp::sigma_sweep(base, sigmas, flags.jobs);
      } catch (const shangpp::InvalidParameter& e) {
        throw UsageError(e.what());
      }
      const fs::path path =
          cfg.output_dir / fmt::format("sweep__{}__{}.csv", method.label(), problem.label());
      write_file(path, [&](std::ostream& out) { shangpp::write_sweep_csv(out, rows); });
      if (cfg.verbosity > 0) {
        for (const auto& r : rows) {
          fmt::print("{} {} sigma={:g}: final {:.6g} delta {:.4g}{}\n", method.label(),
                     problem.label(), r.sigma, r.final_mean_subopt, r.delta,
                     r.divergent ? " [divergent]" : "");
        }
      }
    }
  }
  return kExitOk;
}

int cmd_verify(const std::string& suite, const CommonFlags& flags) {
  shangpp::VerifyOptions options;
  if (flags.seed) {
    options.seed = *flags.seed;
  } else if (auto s = env_seed()) {
    options.seed = *s;
  }
  options.jobs = flags.jobs;
  bool known = false;
  for (const auto& name : shangpp::suite_names()) known = known || name == suite;
  if (!known) {
    throw UsageError(fmt::format("unknown suite '{}' (expected one of: {})", suite,
                                 fmt::join(shangpp::suite_names(), ", ")));
  }
  const shangpp::SuiteReport report = shangpp::run_suite(suite, options);
  report.print(std::cout, flags.quiet);
  return report.passed() ? kExitOk : kExitVerify;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monte-Carlo benchmarks and rate verification for accelerated stochastic gradient methods"};
  app.require_subcommand(1);

  CommonFlags flags;
  std::uint64_t seed_value = 0;
  auto add_common = [&](CLI::App* sub, bool with_config) {
    if (with_config) {
      sub->add_option("--config", flags.config, "Experiment config file")->required();
      sub->add_option("--out", flags.out, "Output directory (overrides output.dir)");
    }
    sub->add_option("--seed", seed_value, "Base seed (overrides config and SHANG_SEED)");
    sub->add_option("--jobs", flags.jobs, "Worker threads")->check(CLI::PositiveNumber);
    sub->add_flag("--quiet", flags.quiet, "Only report failures");
  };

  CLI::App* bench = app.add_subcommand("bench", "Run the experiment grid and write one CSV per spec");
  add_common(bench, true);
  CLI::App* sweep = app.add_subcommand("sweep", "Write relative-degradation tables over sigma");
  add_common(sweep, true);
  CLI::App* verify = app.add_subcommand("verify", "Run a verification suite");
  std::string suite;
  verify->add_option("suite", suite, "Suite name")->required();
  add_common(verify, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }
  for (CLI::App* sub : {bench, sweep, verify}) {
    if (sub->parsed() && sub->count("--seed") > 0) flags.seed = seed_value;
  }

  try {
    if (bench->parsed()) return cmd_bench(flags);
    if (sweep->parsed()) return cmd_sweep(flags);
    return cmd_verify(suite, flags);
  } catch (const UsageError& e) {
    fmt::print(std::cerr, "error: {}\n", e.what());
    return kExitConfig;
  } catch (const shangpp::ConfigError& e) {
    fmt::print(std::cerr, "config error: {}\n", e.what());
    return kExitConfig;
  } catch (const std::exception& e) {
    fmt::print(std::cerr, "runtime failure: {}\n", e.what());
    return kExitRuntime;
  }
}
