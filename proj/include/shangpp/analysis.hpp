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
#include <functional>
#include <optional>
#include <span>
#include <string>

#include "shangpp/core.hpp"
#include "shangpp/noise.hpp"
#include "shangpp/optimizers.hpp"

namespace shangpp {

/// E(z^+; gamma) = f(x^+) - f* + (gamma / 2) ||v - x*||^2, with gamma the
/// state's energy weight. Throws ContractViolation when the problem has no
/// known minimizer.
double lyapunov(const ObjectiveProblem& problem, const ShangState& state);

struct LyapunovRecord {
  std::int64_t k = 0;
  double energy = 0.0;
  double suboptimality = 0.0;
  double v_distance_sq = 0.0;
  double bound = 0.0;
};

LyapunovRecord lyapunov_record(const ObjectiveProblem& problem, const ShangState& state,
                               double bound);

/// Which convergence envelope applies.
enum class RateKind {
  /// SHANG, strongly convex: (1 + alpha)^-(k+1)
  ShangStronglyConvex,
  /// SHANG, convex: 2 / ((k + 2)(k + 3))
  ShangConvex,
  /// SHANG++ with m = 1, strongly convex: (1 - alpha_tilde)^(k+1)
  ShangPPStronglyConvex,
  /// SHANG++, convex: (1 + 2m)(2 + 2m) / ((k + 2 + 2m)(k + 3 + 2m))
  ShangPPConvex,
};

struct RateParams {
  RateKind kind = RateKind::ShangStronglyConvex;
  double alpha = 0.0;
  double alpha_tilde = 0.0;
  double m = 0.0;
};

/// Right-hand side of the expectation bound on E(z^+_{k+1}), i.e. the
/// envelope for the energy after k + 1 steps, scaled by e0 = E(z^+_0).
double theorem_bound(const RateParams& rate, std::int64_t k, double e0);

/// Envelope for the energy after n steps: e0 at n = 0, theorem_bound(n - 1)
/// afterwards.
double envelope_at(const RateParams& rate, std::int64_t n, double e0);

std::string to_string(RateKind kind);

struct DescentCheckResult {
  double mean_lhs = 0.0;
  double standard_error = 0.0;
  double rhs = 0.0;
  bool pass = false;
};

/// Monte-Carlo check of the auxiliary-step descent property
///   E f(x - s g(x)) <= f(x) - (s / 2) ||grad f(x)||^2
/// for 0 < s <= 1 / (L (1 + sigma^2)). Passes iff the sample mean is within
/// rhs + 3 standard errors (plus a 1e-12 relative rounding allowance).
DescentCheckResult descent_check(const ObjectiveProblem& problem, const Point& x,
                                 const MnsOracleConfig& config, NoiseStream& stream,
                                 double alpha_beta, long n_samples);

/// Mean-energy sample at one recorded iteration.
struct EnergySample {
  std::int64_t k = 0;
  double mean_energy = 0.0;
  double std_energy = 0.0;
  std::int64_t n_runs = 0;
};

struct ContractionPolicy {
  /// Floor of the relative slack.
  double min_relative_slack = 0.05;
  /// Standard-error multiplier added to the slack.
  double se_multiplier = 3.0;
  std::int64_t min_runs = 100;
  /// Absolute allowance, used for values in the subnormal range.
  double absolute_floor = 0.0;

  static ContractionPolicy stochastic() { return {}; }
  /// Pointwise check for noiseless runs.
  static ContractionPolicy deterministic(double slack = 1e-9) {
    return {slack, 0.0, 1, 1e-290};
  }
};

struct ContractionReport {
  bool pass = true;
  std::optional<std::int64_t> first_violation;
  /// max over k of mean_energy / (bound * (1 + slack)).
  double worst_ratio = 0.0;
  std::size_t checked = 0;
};

/// Raised when a stochastic check is given too few runs.
class InsufficientStatistics : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Checks mean_energy(k) <= bound(k) (1 + slack_k) + absolute_floor with
/// slack_k = max(min_relative_slack, se_multiplier * relative SE at k).
ContractionReport contraction_check(std::span<const EnergySample> samples,
                                    const std::function<double(std::int64_t)>& bound,
                                    const ContractionPolicy& policy);

}  // namespace shangpp
