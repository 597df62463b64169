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

#include "shangpp/core.hpp"
#include "shangpp/noise.hpp"
#include "shangpp/schedule.hpp"

namespace shangpp {

/// Iterate bundle shared by SHANG and SHANG++.
///
/// `last_g` is the gradient sample g(x_k); it was used to form x_plus and is
/// reused by the next x-update, so every evaluation point costs one draw.
struct ShangState {
  Point x;
  Point v;
  Point x_plus;
  Point last_g;
  double gamma = 0.0;
  /// Velocity weight of the Lyapunov energy at k.
  double energy_gamma = 0.0;
  std::int64_t k = 0;
};

/// Draws g(x0) and forms x0^+ = x0 - aux_step * g(x0). Requires sched.k == 0.
ShangState shang_init(const Point& x0, const Point& v0, const ScheduleParams& sched,
                      MnsOracle& oracle, const ObjectiveProblem& problem);

/// One SHANG step (shared step size alpha_k in both updates):
///   x_{k+1} = (x_k + alpha v_k - alpha beta g_k) / (1 + alpha)
///   v_{k+1} = (v_k + alpha (mu / gamma) x_{k+1} - (alpha / gamma) g_{k+1})
///             / (1 + alpha mu / gamma)
///   x^+_{k+1} = x_{k+1} - aux_step_next g_{k+1}
ShangState shang_step(const ShangState& state, const ScheduleParams& sched,
                      MnsOracle& oracle, const ObjectiveProblem& problem);

/// SHANG++: identical to shang_step except that the x-update uses
/// alpha_tilde. With m = 0 the result is bitwise equal to shang_step.
ShangState shangpp_step(const ShangState& state, const ScheduleParams& sched,
                        MnsOracle& oracle, const ObjectiveProblem& problem);

/// State of the practical (deep-learning) SHANG++ loop, which stores
/// v_{k-1} and x_k and draws one fresh gradient per iteration.
struct DlState {
  Point x;
  Point v;
  std::int64_t k = 1;
};

/// v_0 = x_1 = x_0, k = 1.
DlState shangpp_dl_init(const Point& x0);

/// With alpha_tilde = alpha / (1 + m alpha) and g_k = g(x_k):
///   v_k = v_{k-1} - (alpha / gamma) g_k
///   x_{k+1} = (x_k + alpha_tilde v_k - alpha_tilde (alpha / gamma) g_k)
///             / (1 + alpha_tilde)
DlState shangpp_dl_step(const DlState& state, double alpha, double gamma, double m,
                        MnsOracle& oracle, const ObjectiveProblem& problem);

struct SnagState {
  Point x;
  Point v;
  std::int64_t k = 0;
};

/// Parameters of the four-parameter stochastic Nesterov recursion.
struct SnagOriginalParams {
  double alpha_hat_next = 1.0;
  double s = 0.0;
  double beta_hat = 1.0;
  double eta = 0.0;
};

/// The same method written as a discretization of the HNAG system.
struct SnagHnagParams {
  double alpha_next = 1.0;
  double beta_next = 0.0;
  double gamma_next = 1.0;
  double mu = 0.0;
};

/// alpha_hat = 1 / (1 + alpha), s = alpha beta, beta_hat = 1 / (1 + alpha mu / gamma),
/// eta = beta_hat alpha / gamma.
SnagOriginalParams to_original(const SnagHnagParams& p);

/// g_k = g(x_k);
/// v_{k+1} = beta_hat v_k + (1 - beta_hat) x_k - eta g_k
/// x_{k+1} = alpha_hat x_k + (1 - alpha_hat) v_{k+1} - alpha_hat s g_k
SnagState snag_step_original(const SnagState& state, const SnagOriginalParams& params,
                             MnsOracle& oracle, const ObjectiveProblem& problem);

/// Linear solve of the HNAG-form recursion given g_k = g(x_k).
SnagState snag_step_hnag(const SnagState& state, const SnagHnagParams& params,
                         MnsOracle& oracle, const ObjectiveProblem& problem);

enum class BaselineMethod { Sgd, Shb, Nag };

/// `momentum_buffer` holds the heavy-ball buffer for SHB and the last
/// displacement x_k - x_{k-1} for NAG; SGD leaves it at zero.
struct BaselineState {
  Point x;
  Point momentum_buffer;
  std::int64_t k = 0;
};

BaselineState baseline_init(const Point& x0);

/// SGD:  x <- x - lr g(x)
/// SHB:  b <- momentum b + g(x);  x <- x - lr b
/// NAG:  y = x + momentum (x - x_prev);  x <- y - lr g(y)
BaselineState baseline_step(BaselineMethod method, const BaselineState& state, double lr,
                            double momentum, MnsOracle& oracle,
                            const ObjectiveProblem& problem);

}  // namespace shangpp
