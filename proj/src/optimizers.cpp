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

#include "shangpp/optimizers.hpp"

#include <cmath>
#include <vector>

#include <fmt/format.h>

namespace shangpp {
namespace {

void require_index(const ShangState& state, const ScheduleParams& sched) {
  if (sched.k != state.k) {
    throw ContractViolation(
        fmt::format("schedule is for k={} but state is at k={}", sched.k, state.k));
  }
}

// Shared body of SHANG and SHANG++; `x_step` is alpha_k for SHANG and
// alpha_tilde_k for SHANG++.
ShangState hnag_gauss_seidel_step(const ShangState& state, const ScheduleParams& sched,
                                  double x_step, MnsOracle& oracle,
                                  const ObjectiveProblem& problem) {
  require_index(state, sched);
  const std::size_t d = state.x.dim();
  const Point& g_k = state.last_g;

  std::vector<double> x_next(d);
  const double x_denom = 1.0 + x_step;
  for (std::size_t i = 0; i < d; ++i) {
    x_next[i] = (state.x[i] + x_step * state.v[i] - x_step * sched.beta * g_k[i]) / x_denom;
  }
  ShangState next;
  next.x = Point::unchecked(std::move(x_next));
  next.last_g = oracle.sample(problem.gradient(next.x));

  const double ratio = sched.alpha / sched.gamma;
  const double coupling = ratio * sched.mu;
  const double v_denom = 1.0 + coupling;
  std::vector<double> v_next(d), x_plus(d);
  for (std::size_t i = 0; i < d; ++i) {
    v_next[i] = (state.v[i] + coupling * next.x[i] - ratio * next.last_g[i]) / v_denom;
    x_plus[i] = next.x[i] - sched.aux_step_next * next.last_g[i];
  }
  next.v = Point::unchecked(std::move(v_next));
  next.x_plus = Point::unchecked(std::move(x_plus));
  next.gamma = sched.gamma_next;
  next.energy_gamma = sched.energy_gamma_next;
  next.k = state.k + 1;
  return next;
}

void require_positive(double value, const char* name) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw InvalidParameter(fmt::format("{} must be positive, got {}", name, value));
  }
}

}  // namespace

ShangState shang_init(const Point& x0, const Point& v0, const ScheduleParams& sched,
                      MnsOracle& oracle, const ObjectiveProblem& problem) {
  problem.require_dim(x0, "shang_init");
  problem.require_dim(v0, "shang_init");
  if (sched.k != 0) throw ContractViolation("shang_init needs the k = 0 schedule");
  ShangState s;
  s.x = x0;
  s.v = v0;
  s.last_g = oracle.sample(problem.gradient(x0));
  s.x_plus = axpy(x0, -sched.aux_step, s.last_g);
  s.gamma = sched.gamma;
  s.energy_gamma = sched.energy_gamma;
  s.k = 0;
  return s;
}

ShangState shang_step(const ShangState& state, const ScheduleParams& sched,
                      MnsOracle& oracle, const ObjectiveProblem& problem) {
  return hnag_gauss_seidel_step(state, sched, sched.alpha, oracle, problem);
}

ShangState shangpp_step(const ShangState& state, const ScheduleParams& sched,
                        MnsOracle& oracle, const ObjectiveProblem& problem) {
  return hnag_gauss_seidel_step(state, sched, sched.alpha_tilde, oracle, problem);
}

DlState shangpp_dl_init(const Point& x0) { return DlState{x0, x0, 1}; }

DlState shangpp_dl_step(const DlState& state, double alpha, double gamma, double m,
                        MnsOracle& oracle, const ObjectiveProblem& problem) {
  require_positive(alpha, "alpha");
  require_positive(gamma, "gamma");
  if (!(m >= 0.0)) throw InvalidParameter(fmt::format("m must be >= 0, got {}", m));
  problem.require_dim(state.x, "shangpp_dl_step");

  const double alpha_tilde = alpha / (1.0 + m * alpha);
  const double lr = alpha / gamma;
  const double denom = 1.0 + alpha_tilde;
  const Point g = oracle.sample(problem.gradient(state.x));
  const std::size_t d = state.x.dim();
  std::vector<double> v(d), x(d);
  for (std::size_t i = 0; i < d; ++i) {
    v[i] = state.v[i] - lr * g[i];
    x[i] = state.x[i] / denom + alpha_tilde * v[i] / denom - alpha_tilde * lr * g[i] / denom;
  }
  return DlState{Point::unchecked(std::move(x)), Point::unchecked(std::move(v)), state.k + 1};
}

SnagOriginalParams to_original(const SnagHnagParams& p) {
  SnagOriginalParams o;
  o.alpha_hat_next = 1.0 / (1.0 + p.alpha_next);
  o.s = p.alpha_next * p.beta_next;
  o.beta_hat = 1.0 / (1.0 + p.alpha_next * p.mu / p.gamma_next);
  o.eta = o.beta_hat * p.alpha_next / p.gamma_next;
  return o;
}

SnagState snag_step_original(const SnagState& state, const SnagOriginalParams& params,
                             MnsOracle& oracle, const ObjectiveProblem& problem) {
  problem.require_dim(state.x, "snag_step_original");
  require_same_dim(state.x, state.v, "snag_step_original");
  const Point g = oracle.sample(problem.gradient(state.x));
  const std::size_t d = state.x.dim();
  std::vector<double> v(d), x(d);
  for (std::size_t i = 0; i < d; ++i) {
    v[i] = params.beta_hat * state.v[i] + (1.0 - params.beta_hat) * state.x[i] -
           params.eta * g[i];
    x[i] = params.alpha_hat_next * state.x[i] + (1.0 - params.alpha_hat_next) * v[i] -
           params.alpha_hat_next * params.s * g[i];
  }
  return SnagState{Point::unchecked(std::move(x)), Point::unchecked(std::move(v)),
                   state.k + 1};
}

SnagState snag_step_hnag(const SnagState& state, const SnagHnagParams& params,
                         MnsOracle& oracle, const ObjectiveProblem& problem) {
  problem.require_dim(state.x, "snag_step_hnag");
  require_same_dim(state.x, state.v, "snag_step_hnag");
  require_positive(params.alpha_next, "alpha");
  require_positive(params.gamma_next, "gamma");
  if (!(params.mu >= 0.0)) throw InvalidParameter("mu must be >= 0");

  const Point g = oracle.sample(problem.gradient(state.x));
  const double a = params.alpha_next;
  const double ratio = a / params.gamma_next;
  const double coupling = ratio * params.mu;
  const std::size_t d = state.x.dim();
  std::vector<double> v(d), x(d);
  for (std::size_t i = 0; i < d; ++i) {
    v[i] = (state.v[i] + coupling * state.x[i] - ratio * g[i]) / (1.0 + coupling);
    x[i] = (state.x[i] + a * v[i] - a * params.beta_next * g[i]) / (1.0 + a);
  }
  return SnagState{Point::unchecked(std::move(x)), Point::unchecked(std::move(v)),
                   state.k + 1};
}

BaselineState baseline_init(const Point& x0) {
  return BaselineState{x0, Point::zeros(x0.dim()), 0};
}

BaselineState baseline_step(BaselineMethod method, const BaselineState& state, double lr,
                            double momentum, MnsOracle& oracle,
                            const ObjectiveProblem& problem) {
  require_positive(lr, "lr");
  if (!(momentum >= 0.0 && momentum < 1.0)) {
    throw InvalidParameter(fmt::format("momentum must be in [0, 1), got {}", momentum));
  }
  problem.require_dim(state.x, "baseline_step");
  const std::size_t d = state.x.dim();
  BaselineState next{state.x, state.momentum_buffer, state.k + 1};
  switch (method) {
    case BaselineMethod::Sgd: {
      const Point g = oracle.sample(problem.gradient(state.x));
      for (std::size_t i = 0; i < d; ++i) next.x[i] = state.x[i] - lr * g[i];
      break;
    }
    case BaselineMethod::Shb: {
      const Point g = oracle.sample(problem.gradient(state.x));
      for (std::size_t i = 0; i < d; ++i) {
        next.momentum_buffer[i] = momentum * state.momentum_buffer[i] + g[i];
        next.x[i] = state.x[i] - lr * next.momentum_buffer[i];
      }
      break;
    }
    case BaselineMethod::Nag: {
      std::vector<double> y(d);
      for (std::size_t i = 0; i < d; ++i) {
        y[i] = state.x[i] + momentum * state.momentum_buffer[i];
      }
      const Point look = Point::unchecked(std::move(y));
      const Point g = oracle.sample(problem.gradient(look));
      for (std::size_t i = 0; i < d; ++i) {
        next.x[i] = look[i] - lr * g[i];
        next.momentum_buffer[i] = next.x[i] - state.x[i];
      }
      break;
    }
  }
  return next;
}

}  // namespace shangpp
