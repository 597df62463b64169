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

#include "shangpp/analysis.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "shangpp/stats.hpp"

namespace shangpp {

double lyapunov(const ObjectiveProblem& problem, const ShangState& state) {
  return lyapunov_record(problem, state, 0.0).energy;
}

LyapunovRecord lyapunov_record(const ObjectiveProblem& problem, const ShangState& state,
                               double bound) {
  const Point& x_star = problem.minimizer();
  LyapunovRecord r;
  r.k = state.k;
  r.suboptimality = problem.value(state.x_plus) - problem.minimum_value();
  r.v_distance_sq = distance_sq(state.v, x_star);
  r.energy = r.suboptimality + 0.5 * state.energy_gamma * r.v_distance_sq;
  r.bound = bound;
  return r;
}

double theorem_bound(const RateParams& rate, std::int64_t k, double e0) {
  if (k < 0) throw InvalidParameter("theorem_bound needs k >= 0");
  if (!(e0 >= 0.0)) throw InvalidParameter(fmt::format("E0 must be >= 0, got {}", e0));
  const double kk = static_cast<double>(k);
  switch (rate.kind) {
    case RateKind::ShangStronglyConvex:
      if (!(rate.alpha > 0.0)) throw InvalidParameter("rate needs alpha > 0");
      return e0 * std::pow(1.0 + rate.alpha, -(kk + 1.0));
    case RateKind::ShangConvex:
      return e0 * 2.0 / ((kk + 2.0) * (kk + 3.0));
    case RateKind::ShangPPStronglyConvex:
      if (!(rate.alpha_tilde > 0.0 && rate.alpha_tilde < 1.0)) {
        throw InvalidParameter("rate needs 0 < alpha_tilde < 1");
      }
      return e0 * std::pow(1.0 - rate.alpha_tilde, kk + 1.0);
    case RateKind::ShangPPConvex: {
      if (!(rate.m >= 0.0)) throw InvalidParameter("rate needs m >= 0");
      const double m2 = 2.0 * rate.m;
      return e0 * (1.0 + m2) * (2.0 + m2) / ((kk + 2.0 + m2) * (kk + 3.0 + m2));
    }
  }
  throw InvalidParameter("unknown rate kind");
}

double envelope_at(const RateParams& rate, std::int64_t n, double e0) {
  if (n < 0) throw InvalidParameter("envelope_at needs n >= 0");
  return n == 0 ? e0 : theorem_bound(rate, n - 1, e0);
}

std::string to_string(RateKind kind) {
  switch (kind) {
    case RateKind::ShangStronglyConvex: return "shang-strongly-convex";
    case RateKind::ShangConvex: return "shang-convex";
    case RateKind::ShangPPStronglyConvex: return "shangpp-strongly-convex";
    case RateKind::ShangPPConvex: return "shangpp-convex";
  }
  return "unknown";
}

DescentCheckResult descent_check(const ObjectiveProblem& problem, const Point& x,
                                 const MnsOracleConfig& config, NoiseStream& stream,
                                 double alpha_beta, long n_samples) {
  config.validate();
  problem.require_dim(x, "descent_check");
  const double admissible =
      1.0 / (problem.profile().lipschitz() * (1.0 + config.sigma * config.sigma));
  if (!(alpha_beta > 0.0) || alpha_beta > admissible * (1.0 + 1e-12)) {
    throw ContractViolation(fmt::format(
        "descent_check: alpha*beta={} outside (0, {}]", alpha_beta, admissible));
  }
  if (n_samples < 1) throw InvalidParameter("descent_check needs n_samples >= 1");
  const Point grad = problem.gradient(x);
  const double grad_sq = norm_sq(grad);
  if (!(grad_sq > 0.0)) throw ContractViolation("descent_check needs a nonzero gradient");

  RunningStats lhs;
  for (long n = 0; n < n_samples; ++n) {
    const Point g = sample_noisy_gradient(config, stream, grad);
    lhs.push(problem.value(axpy(x, -alpha_beta, g)));
  }
  const double fx = problem.value(x);
  DescentCheckResult r;
  r.mean_lhs = lhs.mean();
  r.standard_error = lhs.standard_error();
  r.rhs = fx - 0.5 * alpha_beta * grad_sq;
  const double rounding = 1e-12 * std::max(1.0, std::abs(fx));
  r.pass = r.mean_lhs <= r.rhs + 3.0 * r.standard_error + rounding;
  return r;
}

ContractionReport contraction_check(std::span<const EnergySample> samples,
                                    const std::function<double(std::int64_t)>& bound,
                                    const ContractionPolicy& policy) {
  ContractionReport report;
  for (const EnergySample& s : samples) {
    if (s.n_runs < policy.min_runs) {
      throw InsufficientStatistics(fmt::format(
          "contraction_check: k={} has {} runs, need at least {}", s.k, s.n_runs,
          policy.min_runs));
    }
    double rel_se = 0.0;
    if (s.n_runs > 1 && s.mean_energy > 0.0) {
      rel_se = s.std_energy / (std::sqrt(static_cast<double>(s.n_runs)) * s.mean_energy);
    }
    const double slack = std::max(policy.min_relative_slack, policy.se_multiplier * rel_se);
    const double b = bound(s.k);
    const double limit = b * (1.0 + slack) + policy.absolute_floor;
    ++report.checked;
    if (limit > 0.0) report.worst_ratio = std::max(report.worst_ratio, s.mean_energy / limit);
    const bool ok = std::isfinite(s.mean_energy) && s.mean_energy <= limit;
    if (!ok && report.pass) {
      report.pass = false;
      report.first_violation = s.k;
    }
  }
  return report;
}

}  // namespace shangpp
