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

#include "shangpp/core.hpp"

namespace shangpp {

enum class Regime { StronglyConvex, Convex };

/// Resolved coefficients for iteration k of SHANG / SHANG++.
///
/// `alpha` drives the v-update and `alpha_tilde = alpha / (1 + m alpha)` the
/// x-update (the two coincide when m = 0). `gamma` is the time scaling used
/// in the v-update; `energy_gamma` is the weight of the velocity term in the
/// Lyapunov energy, which equals gamma except for the convex SHANG++
/// schedule, where it is gamma / (1 + m alpha). `aux_step` is the
/// auxiliary-iterate step alpha_tilde * beta used to form x^+.
struct ScheduleParams {
  Regime regime = Regime::StronglyConvex;
  std::int64_t k = 0;
  double alpha = 0.0;
  double alpha_tilde = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  double gamma_next = 0.0;
  double energy_gamma = 0.0;
  double energy_gamma_next = 0.0;
  double aux_step = 0.0;
  double aux_step_next = 0.0;
  double m = 0.0;
  double mu = 0.0;
  double sigma = 0.0;
};

/// Builds the theorem parameterization at iteration k.
///
/// Strongly convex (requires mu > 0): gamma = mu, constant steps.
/// `step` overrides the x-update step alpha_tilde (alpha itself when m = 0);
/// default (1 / (1 + sigma^2)) sqrt(mu / L). alpha = alpha_tilde / (1 - m
/// alpha_tilde), which needs m alpha_tilde < 1, and beta = (1 + sigma^2)
/// alpha_tilde / mu.
///
/// Convex: mu is taken as 0, alpha_k = 2 / (k + 1), alpha_tilde_k = 2 / (k + 1
/// + 2m), gamma_k = alpha_k alpha_tilde_k (1 + sigma^2)^2 L and beta_k = alpha_k
/// (1 + sigma^2) / gamma_k. No step override is accepted.
ScheduleParams build_schedule(Regime regime, const SmoothnessProfile& profile,
                              double sigma, double m, std::optional<double> step,
                              std::int64_t k);

/// (G_{k+1} - G_k) / s_k - (mu - G_{k+1}) for consecutive schedules, where
/// (G, s) = (energy_gamma, alpha_tilde). Admissible schedules give <= 0; for
/// m = 0 this is the plain (gamma, alpha) condition.
double schedule_condition_residual(const ScheduleParams& at_k,
                                   const ScheduleParams& at_next);

}  // namespace shangpp
