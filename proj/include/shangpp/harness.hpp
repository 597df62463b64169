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

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "shangpp/analysis.hpp"
#include "shangpp/core.hpp"
#include "shangpp/noise.hpp"
#include "shangpp/optimizers.hpp"
#include "shangpp/schedule.hpp"

namespace shangpp {

enum class MethodId { Shang, ShangPP, ShangPPDl, Snag, Sgd, Shb, Nag };

std::string to_string(MethodId id);
/// Accepts shang, shangpp (or shang++), shangpp-dl, snag, sgd, shb, nag.
MethodId parse_method(std::string_view name);

/// Problem description that can be rebuilt inside every worker.
struct ProblemSpec {
  enum class Kind { Fd, Quadratic };
  Kind kind = Kind::Fd;
  int d_exponent = 4;
  std::vector<double> eigenvalues;
  /// Empty means the origin.
  std::vector<double> center;

  static ProblemSpec fd(int d);
  static ProblemSpec quadratic(std::vector<double> eigenvalues,
                               std::vector<double> center = {});
  /// "f4", "fd:16", "quadratic:0.01;1" or "quadratic:1;1@3;-3" (center after @).
  static ProblemSpec parse(std::string_view text);

  ObjectiveProblem build() const;
  std::size_t dimension() const;
  std::string label() const;
};

struct MethodSpec {
  MethodId id = MethodId::Shang;
  /// SHANG family: defaults to strongly convex when mu > 0, convex otherwise.
  std::optional<Regime> regime;
  /// SHANG++ correction strength (SHANG always uses 0).
  double m = 1.0;
  /// Strongly convex x-update step (alpha for SHANG, alpha_tilde for SHANG++).
  std::optional<double> step;
  /// Noise level used to derive theorem parameters and default baseline
  /// step sizes. Defaults to the experiment's sigma.
  std::optional<double> hyper_sigma;
  /// Baselines. Default lr = 1 / ((1 + hyper_sigma^2) L); default momentum
  /// 0.9 for SHB/NAG, 0 for SGD.
  std::optional<double> lr;
  std::optional<double> momentum;
  /// Practical SHANG++ loop.
  double dl_alpha = 0.5;
  double dl_gamma = 1.0;
  double dl_m = 1.5;
  /// SNAG has no default parameterization and must be given explicitly.
  std::optional<SnagOriginalParams> snag;

  static MethodSpec of(MethodId id) {
    MethodSpec s;
    s.id = id;
    return s;
  }
  std::string label() const;
};

struct ExperimentSpec {
  ProblemSpec problem;
  MethodSpec method;
  double sigma = 0.0;
  NoiseShape shape = NoiseShape::Elementwise;
  int averaging_count = 1;
  std::int64_t n_runs = 1;
  std::int64_t n_iters = 1;
  std::uint64_t base_seed = 0;
  std::vector<double> x0;
  std::int64_t record_every = 1;
  /// Upper bound on n_runs * n_iters.
  double budget = 4e9;

  void validate() const;
  std::string label() const;
};

/// Suboptimality above this (or non-finite) marks a run as diverged.
inline constexpr double kDivergenceThreshold = 1e12;

/// Quantities recorded after k steps. For SHANG/SHANG++ suboptimality is
/// f(x_k^+) - f* and energy the Lyapunov value; other methods report
/// f(x_k) - f* in both columns.
struct TrajectoryRecord {
  std::int64_t k = 0;
  double suboptimality = 0.0;
  double energy = 0.0;
};

struct Trajectory {
  double initial_energy = 0.0;
  double initial_suboptimality = 0.0;
  double final_suboptimality = 0.0;
  std::vector<TrajectoryRecord> records;
  bool diverged = false;
  std::int64_t diverged_at = -1;
};

/// Error from inside an experiment, tagged with method, step and run.
class ExperimentError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The rate envelope that applies to the spec's method, if any.
std::optional<RateParams> rate_for(const ExperimentSpec& spec);

/// Deterministic in (base_seed, run_index). Records every record_every steps
/// and truncates at divergence.
Trajectory run_trajectory(const ExperimentSpec& spec, std::int64_t run_index);

struct StatsRow {
  std::int64_t k = 0;
  double mean_subopt = 0.0;
  double std_subopt = 0.0;
  double mean_energy = 0.0;
  double std_energy = 0.0;
  double bound = 0.0;
  std::int64_t n_runs = 0;
  std::int64_t diverged_runs = 0;
};

struct TrajectoryStats {
  std::vector<StatsRow> rows;
  std::optional<RateParams> rate;
  double mean_initial_energy = 0.0;
  double mean_initial_subopt = 0.0;
  double final_mean_subopt = 0.0;
  std::int64_t total_runs = 0;
  std::int64_t diverged_runs = 0;
  bool all_diverged = false;

  std::vector<EnergySample> energy_samples() const;
};

/// Runs spec.n_runs trajectories (run r uses stream (base_seed, r)) on up to
/// `jobs` threads and reduces them in run-index order. Diverged runs are
/// excluded from the means and counted in diverged_runs.
TrajectoryStats run_monte_carlo(const ExperimentSpec& spec, unsigned jobs = 1);

struct SweepRow {
  std::string method;
  double sigma = 0.0;
  double final_mean_subopt = 0.0;
  /// (E(sigma) - E(0)) / E(0)
  double delta = 0.0;
  /// log10(E(sigma) / E(0))
  double log10_ratio = 0.0;
  std::int64_t diverged_runs = 0;
  /// Set when a run diverged or the final mean did not improve on the start.
  bool divergent = false;
};

/// Runs base_spec at each sigma with hyperparameters held fixed: unless the
/// method pins hyper_sigma, it is set to the largest sigma of the sweep.
std::vector<SweepRow> sigma_sweep(const ExperimentSpec& base_spec,
                                  std::span<const double> sigmas, unsigned jobs = 1);

}  // namespace shangpp
