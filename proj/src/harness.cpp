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

#include "shangpp/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

#include <fmt/format.h>

#include "shangpp/problems.hpp"
#include "shangpp/stats.hpp"

namespace shangpp {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

double parse_double(std::string_view text) {
  text = trim(text);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw InvalidParameter(fmt::format("not a number: '{}'", text));
  }
  return value;
}

std::vector<double> parse_list(std::string_view text) {
  std::vector<double> out;
  while (true) {
    const auto pos = text.find(';');
    out.push_back(parse_double(text.substr(0, pos)));
    if (pos == std::string_view::npos) break;
    text.remove_prefix(pos + 1);
  }
  return out;
}

bool is_shang_family(MethodId id) { return id == MethodId::Shang || id == MethodId::ShangPP; }

Regime regime_for(const ExperimentSpec& spec, const ObjectiveProblem& problem) {
  if (spec.method.regime) return *spec.method.regime;
  return problem.profile().strongly_convex() ? Regime::StronglyConvex : Regime::Convex;
}

double hyper_sigma(const ExperimentSpec& spec) {
  return spec.method.hyper_sigma.value_or(spec.sigma);
}

double effective_m(const ExperimentSpec& spec) {
  return spec.method.id == MethodId::Shang ? 0.0 : spec.method.m;
}

bool diverged(double subopt) { return !std::isfinite(subopt) || subopt > kDivergenceThreshold; }

// Drives one trajectory; `observe(k, subopt, energy)` returns false to stop.
template <typename Observe>
void drive(const ExperimentSpec& spec, const ObjectiveProblem& problem, MnsOracle& oracle,
           Trajectory& traj, Observe&& observe) {
  const Point x0(spec.x0);
  const double f_star = problem.minimum_value();
  const MethodSpec& method = spec.method;
  const std::int64_t n = spec.n_iters;

  if (is_shang_family(method.id)) {
    const Regime regime = regime_for(spec, problem);
    const double hs = hyper_sigma(spec);
    const double m = effective_m(spec);
    auto schedule = [&](std::int64_t k) {
      return build_schedule(regime, problem.profile(), hs, m, method.step, k);
    };
    ScheduleParams sched = schedule(0);
    ShangState state = shang_init(x0, x0, sched, oracle, problem);
    const LyapunovRecord r0 = lyapunov_record(problem, state, 0.0);
    traj.initial_energy = r0.energy;
    traj.initial_suboptimality = r0.suboptimality;
    for (std::int64_t k = 0; k < n; ++k) {
      if (regime == Regime::Convex && k > 0) sched = schedule(k);
      state = method.id == MethodId::Shang ? shang_step(state, sched, oracle, problem)
                                           : shangpp_step(state, sched, oracle, problem);
      if (regime == Regime::StronglyConvex) sched.k = state.k;
      const LyapunovRecord r = lyapunov_record(problem, state, 0.0);
      if (!observe(state.k, r.suboptimality, r.energy)) return;
    }
    return;
  }

  const double start = problem.value(x0) - f_star;
  traj.initial_energy = start;
  traj.initial_suboptimality = start;

  switch (method.id) {
    case MethodId::ShangPPDl: {
      DlState state = shangpp_dl_init(x0);
      for (std::int64_t k = 0; k < n; ++k) {
        state = shangpp_dl_step(state, method.dl_alpha, method.dl_gamma, method.dl_m, oracle,
                                problem);
        const double s = problem.value(state.x) - f_star;
        if (!observe(k + 1, s, s)) return;
      }
      return;
    }
    case MethodId::Snag: {
      if (!method.snag) {
        throw InvalidParameter("snag needs explicit parameters (alpha_hat, s, beta_hat, eta)");
      }
      SnagState state{x0, x0, 0};
      for (std::int64_t k = 0; k < n; ++k) {
        state = snag_step_original(state, *method.snag, oracle, problem);
        const double s = problem.value(state.x) - f_star;
        if (!observe(k + 1, s, s)) return;
      }
      return;
    }
    default: {
      const BaselineMethod bm = method.id == MethodId::Sgd   ? BaselineMethod::Sgd
                                : method.id == MethodId::Shb ? BaselineMethod::Shb
                                                             : BaselineMethod::Nag;
      const double hs = hyper_sigma(spec);
      const double lr =
          method.lr.value_or(1.0 / ((1.0 + hs * hs) * problem.profile().lipschitz()));
      const double momentum =
          method.momentum.value_or(method.id == MethodId::Sgd ? 0.0 : 0.9);
      BaselineState state = baseline_init(x0);
      for (std::int64_t k = 0; k < n; ++k) {
        state = baseline_step(bm, state, lr, momentum, oracle, problem);
        const double s = problem.value(state.x) - f_star;
        if (!observe(k + 1, s, s)) return;
      }
      return;
    }
  }
}

}  // namespace

std::string to_string(MethodId id) {
  switch (id) {
    case MethodId::Shang: return "shang";
    case MethodId::ShangPP: return "shangpp";
    case MethodId::ShangPPDl: return "shangpp-dl";
    case MethodId::Snag: return "snag";
    case MethodId::Sgd: return "sgd";
    case MethodId::Shb: return "shb";
    case MethodId::Nag: return "nag";
  }
  return "unknown";
}

MethodId parse_method(std::string_view name) {
  name = trim(name);
  if (name == "shang") return MethodId::Shang;
  if (name == "shangpp" || name == "shang++") return MethodId::ShangPP;
  if (name == "shangpp-dl" || name == "shang++-dl") return MethodId::ShangPPDl;
  if (name == "snag") return MethodId::Snag;
  if (name == "sgd") return MethodId::Sgd;
  if (name == "shb") return MethodId::Shb;
  if (name == "nag") return MethodId::Nag;
  throw InvalidParameter(fmt::format("unknown method '{}'", name));
}

ProblemSpec ProblemSpec::fd(int d) {
  ProblemSpec p;
  p.kind = Kind::Fd;
  p.d_exponent = d;
  return p;
}

ProblemSpec ProblemSpec::quadratic(std::vector<double> eigenvalues, std::vector<double> center) {
  ProblemSpec p;
  p.kind = Kind::Quadratic;
  p.eigenvalues = std::move(eigenvalues);
  p.center = std::move(center);
  return p;
}

ProblemSpec ProblemSpec::parse(std::string_view text) {
  text = trim(text);
  auto parse_exponent = [&](std::string_view digits) {
    int d = 0;
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), d);
    if (ec != std::errc() || ptr != digits.data() + digits.size()) {
      throw InvalidParameter(fmt::format("bad f_d exponent in '{}'", text));
    }
    return fd(d);
  };
  if (text.starts_with("fd:")) return parse_exponent(text.substr(3));
  if (text.size() > 1 && text[0] == 'f' && std::isdigit(static_cast<unsigned char>(text[1]))) {
    return parse_exponent(text.substr(1));
  }
  if (text.starts_with("quadratic:")) {
    std::string_view body = text.substr(10);
    const auto at = body.find('@');
    std::vector<double> center;
    if (at != std::string_view::npos) center = parse_list(body.substr(at + 1));
    return quadratic(parse_list(body.substr(0, at)), std::move(center));
  }
  throw InvalidParameter(fmt::format("unknown problem '{}'", text));
}

ObjectiveProblem ProblemSpec::build() const {
  if (kind == Kind::Fd) return make_fd_problem(d_exponent);
  const std::vector<double> c = center.empty() ? std::vector<double>(eigenvalues.size(), 0.0)
                                               : center;
  return make_quadratic(eigenvalues, Point(c));
}

std::size_t ProblemSpec::dimension() const {
  return kind == Kind::Fd ? 1 : eigenvalues.size();
}

std::string ProblemSpec::label() const {
  if (kind == Kind::Fd) return fmt::format("f{}", d_exponent);
  const auto [lo, hi] = std::minmax_element(eigenvalues.begin(), eigenvalues.end());
  return fmt::format("quad{}d-kappa{:g}", eigenvalues.size(), *hi / *lo);
}

std::string MethodSpec::label() const {
  if (id == MethodId::ShangPP) return fmt::format("shangpp-m{:g}", m);
  return to_string(id);
}

void ExperimentSpec::validate() const {
  if (n_runs < 1) throw InvalidParameter("n_runs must be >= 1");
  if (n_iters < 1) throw InvalidParameter("n_iters must be >= 1");
  if (record_every < 1) throw InvalidParameter("record_every must be >= 1");
  if (static_cast<double>(n_runs) * static_cast<double>(n_iters) > budget) {
    throw InvalidParameter(fmt::format("n_runs * n_iters = {} exceeds the budget {:g}",
                                       n_runs * n_iters, budget));
  }
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) throw InvalidParameter("sigma must be >= 0");
  if (averaging_count < 1) throw InvalidParameter("averaging count must be >= 1");
  if (x0.size() != problem.dimension()) {
    throw InvalidParameter(fmt::format("x0 has dimension {}, problem {} has {}", x0.size(),
                                       problem.label(), problem.dimension()));
  }
  if (method.id == MethodId::Snag && !method.snag) {
    throw InvalidParameter("snag needs explicit parameters (alpha_hat, s, beta_hat, eta)");
  }
}

std::string ExperimentSpec::label() const {
  return fmt::format("{}__{}__sigma{:g}", method.label(), problem.label(), sigma);
}

std::optional<RateParams> rate_for(const ExperimentSpec& spec) {
  if (!is_shang_family(spec.method.id)) return std::nullopt;
  const ObjectiveProblem problem = spec.problem.build();
  const Regime regime = regime_for(spec, problem);
  const double m = effective_m(spec);
  const ScheduleParams s =
      build_schedule(regime, problem.profile(), hyper_sigma(spec), m, spec.method.step, 0);
  if (regime == Regime::Convex) {
    if (m == 0.0) return RateParams{RateKind::ShangConvex, 0.0, 0.0, 0.0};
    return RateParams{RateKind::ShangPPConvex, 0.0, 0.0, m};
  }
  if (m == 0.0) return RateParams{RateKind::ShangStronglyConvex, s.alpha, s.alpha_tilde, 0.0};
  if (m == 1.0) return RateParams{RateKind::ShangPPStronglyConvex, s.alpha, s.alpha_tilde, 1.0};
  return std::nullopt;
}

Trajectory run_trajectory(const ExperimentSpec& spec, std::int64_t run_index) {
  spec.validate();
  const ObjectiveProblem problem = spec.problem.build();
  MnsOracleConfig config;
  config.sigma = spec.sigma;
  config.shape = spec.shape;
  config.averaging_count = spec.averaging_count;
  config.seed = spec.base_seed;
  MnsOracle oracle(config, static_cast<std::uint64_t>(run_index));

  Trajectory traj;
  traj.records.reserve(static_cast<std::size_t>(spec.n_iters / spec.record_every) + 1);
  std::int64_t current_k = 0;
  auto observe = [&](std::int64_t k, double subopt, double energy) {
    current_k = k;
    traj.final_suboptimality = subopt;
    if (diverged(subopt)) {
      traj.diverged = true;
      traj.diverged_at = k;
      return false;
    }
    if (k % spec.record_every == 0) traj.records.push_back({k, subopt, energy});
    return true;
  };
  try {
    drive(spec, problem, oracle, traj, observe);
  } catch (const std::exception& e) {
    throw ExperimentError(fmt::format("{} run {} at k={}: {}", spec.label(), run_index,
                                      current_k, e.what()));
  }
  return traj;
}

std::vector<EnergySample> TrajectoryStats::energy_samples() const {
  std::vector<EnergySample> out;
  out.reserve(rows.size());
  for (const StatsRow& r : rows) out.push_back({r.k, r.mean_energy, r.std_energy, r.n_runs});
  return out;
}

TrajectoryStats run_monte_carlo(const ExperimentSpec& spec, unsigned jobs) {
  spec.validate();
  const auto n_runs = static_cast<std::size_t>(spec.n_runs);
  std::vector<Trajectory> runs(n_runs);

  const unsigned workers = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(n_runs)));
  if (workers == 1) {
    for (std::size_t r = 0; r < n_runs; ++r) runs[r] = run_trajectory(spec, static_cast<std::int64_t>(r));
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t r = next++; r < n_runs; r = next++) {
          try {
            runs[r] = run_trajectory(spec, static_cast<std::int64_t>(r));
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
  }

  TrajectoryStats stats;
  stats.rate = rate_for(spec);
  stats.total_runs = spec.n_runs;

  // Record grid: multiples of record_every up to n_iters.
  std::vector<std::int64_t> grid;
  for (std::int64_t k = spec.record_every; k <= spec.n_iters; k += spec.record_every) grid.push_back(k);

  RunningStats e0, s0, final_s;
  std::vector<RunningStats> subopt(grid.size()), energy(grid.size());
  std::vector<std::int64_t> diverged_by(grid.size(), 0);
  for (const Trajectory& t : runs) {
    if (t.diverged) {
      ++stats.diverged_runs;
      for (std::size_t i = 0; i < grid.size(); ++i) {
        if (t.diverged_at <= grid[i]) ++diverged_by[i];
      }
      continue;
    }
    e0.push(t.initial_energy);
    s0.push(t.initial_suboptimality);
    final_s.push(t.final_suboptimality);
    for (std::size_t i = 0; i < t.records.size(); ++i) {
      subopt[i].push(t.records[i].suboptimality);
      energy[i].push(t.records[i].energy);
    }
  }
  stats.all_diverged = stats.diverged_runs == spec.n_runs;
  stats.mean_initial_energy = stats.all_diverged ? kNaN : e0.mean();
  stats.mean_initial_subopt = stats.all_diverged ? kNaN : s0.mean();
  stats.final_mean_subopt = stats.all_diverged ? kNaN : final_s.mean();

  stats.rows.reserve(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    StatsRow row;
    row.k = grid[i];
    row.n_runs = subopt[i].count();
    row.diverged_runs = diverged_by[i];
    if (row.n_runs > 0) {
      row.mean_subopt = subopt[i].mean();
      row.std_subopt = subopt[i].stddev();
      row.mean_energy = energy[i].mean();
      row.std_energy = energy[i].stddev();
    } else {
      row.mean_subopt = row.std_subopt = row.mean_energy = row.std_energy = kNaN;
    }
    row.bound = stats.rate && !stats.all_diverged
                    ? envelope_at(*stats.rate, row.k, stats.mean_initial_energy)
                    : kNaN;
    stats.rows.push_back(row);
  }
  return stats;
}

std::vector<SweepRow> sigma_sweep(const ExperimentSpec& base_spec, std::span<const double> sigmas,
                                  unsigned jobs) {
  if (std::find(sigmas.begin(), sigmas.end(), 0.0) == sigmas.end()) {
    throw InvalidParameter("sigma sweep needs sigma = 0 as its anchor");
  }
  ExperimentSpec spec = base_spec;
  if (!spec.method.hyper_sigma) {
    spec.method.hyper_sigma = *std::max_element(sigmas.begin(), sigmas.end());
  }
  spec.sigma = 0.0;
  const TrajectoryStats anchor = run_monte_carlo(spec, jobs);
  const double e_zero = anchor.final_mean_subopt;

  std::vector<SweepRow> rows;
  for (double sigma : sigmas) {
    spec.sigma = sigma;
    const TrajectoryStats stats = sigma == 0.0 ? anchor : run_monte_carlo(spec, jobs);
    SweepRow row;
    row.method = spec.method.label();
    row.sigma = sigma;
    row.final_mean_subopt = stats.final_mean_subopt;
    row.delta = (stats.final_mean_subopt - e_zero) / e_zero;
    row.log10_ratio = std::log10(stats.final_mean_subopt / e_zero);
    row.diverged_runs = stats.diverged_runs;
    row.divergent = stats.diverged_runs > 0 || !std::isfinite(stats.final_mean_subopt) ||
                    stats.final_mean_subopt > stats.mean_initial_subopt;
    if (sigma == 0.0) {
      row.delta = 0.0;
      row.log10_ratio = 0.0;
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace shangpp
