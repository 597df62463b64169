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

#include "shangpp/schedule.hpp"

#include <cmath>

#include <fmt/format.h>

namespace shangpp {
namespace {

void fill_convex(ScheduleParams& s, double lipschitz, std::int64_t k) {
  const double noise = 1.0 + s.sigma * s.sigma;
  const double scale = noise * noise * lipschitz;
  auto at = [&](std::int64_t j, double& alpha, double& alpha_tilde, double& gamma,
                double& energy_gamma, double& beta) {
    const double kk = static_cast<double>(j);
    alpha = 2.0 / (kk + 1.0);
    alpha_tilde = 2.0 / (kk + 1.0 + 2.0 * s.m);
    gamma = alpha * alpha_tilde * scale;
    energy_gamma = alpha_tilde * alpha_tilde * scale;
    beta = alpha * noise / gamma;
  };
  double a1, at1, g1, eg1, b1;
  at(k, s.alpha, s.alpha_tilde, s.gamma, s.energy_gamma, s.beta);
  at(k + 1, a1, at1, g1, eg1, b1);
  s.gamma_next = g1;
  s.energy_gamma_next = eg1;
  s.aux_step = s.alpha_tilde * s.beta;
  s.aux_step_next = at1 * b1;
  s.mu = 0.0;
}

}  // namespace

ScheduleParams build_schedule(Regime regime, const SmoothnessProfile& profile,
                              double sigma, double m, std::optional<double> step,
                              std::int64_t k) {
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
    throw InvalidParameter(fmt::format("sigma must be >= 0, got {}", sigma));
  }
  if (!(m >= 0.0) || !std::isfinite(m)) {
    throw InvalidParameter(fmt::format("m must be >= 0, got {}", m));
  }
  if (k < 0) throw InvalidParameter("iteration index must be >= 0");

  ScheduleParams s;
  s.regime = regime;
  s.k = k;
  s.m = m;
  s.sigma = sigma;
  const double noise = 1.0 + sigma * sigma;

  if (regime == Regime::Convex) {
    if (step) throw InvalidParameter("the convex schedule has no step override");
    fill_convex(s, profile.lipschitz(), k);
    return s;
  }

  const double mu = profile.mu();
  if (!(mu > 0.0)) {
    throw InvalidParameter("strongly convex schedule requested for a problem with mu = 0");
  }
  const double alpha_tilde =
      step.value_or(std::sqrt(mu / profile.lipschitz()) / noise);
  if (!(alpha_tilde > 0.0) || !std::isfinite(alpha_tilde)) {
    throw InvalidParameter(fmt::format("step must be positive, got {}", alpha_tilde));
  }
  if (m * alpha_tilde >= 1.0) {
    throw InvalidParameter(fmt::format(
        "m * alpha_tilde must be < 1 (alpha = alpha_tilde / (1 - m alpha_tilde)), got {}",
        m * alpha_tilde));
  }
  s.alpha_tilde = alpha_tilde;
  s.alpha = m == 0.0 ? alpha_tilde : alpha_tilde / (1.0 - m * alpha_tilde);
  s.mu = mu;
  s.gamma = mu;
  s.gamma_next = mu;
  s.energy_gamma = mu;
  s.energy_gamma_next = mu;
  s.beta = noise * alpha_tilde / mu;
  s.aux_step = alpha_tilde * s.beta;
  s.aux_step_next = s.aux_step;
  return s;
}

double schedule_condition_residual(const ScheduleParams& at_k,
                                   const ScheduleParams& at_next) {
  if (at_next.k != at_k.k + 1 || at_next.regime != at_k.regime) {
    throw ContractViolation("schedule_condition_residual needs consecutive schedules");
  }
  return (at_next.energy_gamma - at_k.energy_gamma) / at_k.alpha_tilde -
         (at_k.mu - at_next.energy_gamma);
}

}  // namespace shangpp
