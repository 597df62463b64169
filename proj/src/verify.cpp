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

#include "shangpp/verify.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <random>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "shangpp/analysis.hpp"
#include "shangpp/harness.hpp"
#include "shangpp/noise.hpp"
#include "shangpp/optimizers.hpp"
#include "shangpp/problems.hpp"
#include "shangpp/schedule.hpp"

namespace shangpp {
namespace {

constexpr long kOracleSamples = 100000;
constexpr double kZLimit = 5.0;

double z_score(double value, double expected, double se) {
  const double dev = std::abs(value - expected);
  if (se == 0.0) return dev == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return dev / se;
}

const char* shape_name(NoiseShape s) {
  return s == NoiseShape::ScalarFactor ? "scalar" : "elementwise";
}

// x0 at unit distance from the origin along the diagonal.
std::vector<double> unit_diagonal(std::size_t d) {
  return std::vector<double>(d, 1.0 / std::sqrt(static_cast<double>(d)));
}

std::vector<ProblemSpec> lemma2_problems() {
  return {ProblemSpec::fd(4), ProblemSpec::fd(16), ProblemSpec::quadratic({0.01, 1.0}),
          ProblemSpec::quadratic({0.1, 0.5, 1.0})};
}

void add_contraction(SuiteReport& report, const std::string& name,
                     const TrajectoryStats& stats, const ContractionPolicy& policy) {
  const auto samples = stats.energy_samples();
  const RateParams rate = *stats.rate;
  const double e0 = stats.mean_initial_energy;
  const ContractionReport r = contraction_check(
      samples, [&](std::int64_t k) { return envelope_at(rate, k, e0); }, policy);
  report.check_le(name + " max(mean E_k / envelope_k(1+slack))", r.worst_ratio, 1.0);
  report.check_le(name + " diverged runs", static_cast<double>(stats.diverged_runs), 0.0);
}

}  // namespace

bool SuiteReport::passed() const { return failures() == 0; }

std::size_t SuiteReport::failures() const {
  return static_cast<std::size_t>(
      std::count_if(checks.begin(), checks.end(), [](const CheckResult& c) { return !c.pass; }));
}

void SuiteReport::check_le(std::string name, double measured, double threshold) {
  checks.push_back({std::move(name), measured, threshold, measured <= threshold});
}

void SuiteReport::print(std::ostream& out, bool failures_only) const {
  for (const CheckResult& c : checks) {
    if (failures_only && c.pass) continue;
    fmt::print(out, "[{}] {}: measured={:.6g} threshold={:.6g}\n", c.pass ? "PASS" : "FAIL",
               c.name, c.measured, c.threshold);
  }
  fmt::print(out, "suite {}: {} checks, {} failed -> {}\n", suite, checks.size(), failures(),
             passed() ? "PASS" : "FAIL");
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {
      "lemma1", "lemma2", "schedules", "snag-equivalence", "deterministic-rates",
      "stochastic-rates"};
  return names;
}

SuiteReport run_suite(std::string_view name, const VerifyOptions& options) {
  if (name == "lemma1") return verify_lemma1(options);
  if (name == "lemma2") return verify_lemma2(options);
  if (name == "schedules") return verify_schedules(options);
  if (name == "snag-equivalence") return verify_snag_equivalence(options);
  if (name == "deterministic-rates") return verify_deterministic_rates(options);
  if (name == "stochastic-rates") return verify_stochastic_rates(options);
  throw InvalidParameter(fmt::format("unknown suite '{}'", name));
}

SuiteReport verify_lemma1(const VerifyOptions& options) {
  SuiteReport report{"lemma1", {}};
  const Point grad{3.0, -4.0};
  const double grad_sq = norm_sq(grad);
  std::uint64_t run = 0;
  for (NoiseShape shape : {NoiseShape::ScalarFactor, NoiseShape::Elementwise}) {
    for (double sigma : {0.5, 1.0, 10.0}) {
      for (int k_avg : {1, 4}) {
        const MnsOracleConfig config{sigma, shape, k_avg, options.seed};
        NoiseStream stream(options.seed, run++);
        const OracleMoments m = estimate_oracle_moments(config, stream, grad, kOracleSamples);
        const std::string tag =
            fmt::format("{} sigma={:g} K={}", shape_name(shape), sigma, k_avg);
        const double mns = config.effective_mns_constant();
        report.check_le(tag + " MNS constant z-score vs sigma^2/K",
                        z_score(m.mns_ratio.mean, mns, m.mns_ratio.standard_error), kZLimit);
        double worst = 0.0;
        for (std::size_t i = 0; i < grad.dim(); ++i) {
          worst = std::max(worst, z_score(m.component_mean[i].mean, grad[i],
                                          m.component_mean[i].standard_error));
        }
        report.check_le(tag + " unbiasedness max z-score", worst, kZLimit);
        report.check_le(tag + " <g, grad f> z-score vs ||grad f||^2",
                        z_score(m.inner_product.mean, grad_sq, m.inner_product.standard_error),
                        kZLimit);
        report.check_le(tag + " E||g||^2 z-score vs (1 + sigma^2/K)||grad f||^2",
                        z_score(m.second_moment.mean, (1.0 + mns) * grad_sq,
                                m.second_moment.standard_error),
                        kZLimit);
      }
    }
  }
  NoiseStream stream(options.seed, run);
  const Estimate exact =
      empirical_mns_constant({0.0, NoiseShape::Elementwise, 1, options.seed}, stream, grad,
                             10000);
  report.check_le("sigma=0 MNS constant", std::abs(exact.mean), 0.0);
  return report;
}

SuiteReport verify_lemma2(const VerifyOptions& options) {
  SuiteReport report{"lemma2", {}};
  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> coord(-2.0, 2.0);
  std::uint64_t run = 0;
  for (const ProblemSpec& spec : lemma2_problems()) {
    const ObjectiveProblem problem = spec.build();
    for (double sigma : {0.0, 1.0, 2.0}) {
      const double admissible = 1.0 / (problem.profile().lipschitz() * (1.0 + sigma * sigma));
      for (double fraction : {1.0, 0.5, 0.1}) {
        int failures = 0;
        double worst = -std::numeric_limits<double>::infinity();
        for (int p = 0; p < 20; ++p) {
          std::vector<double> xs(problem.dimension());
          for (double& c : xs) c = coord(rng);
          const Point x(xs);
          const MnsOracleConfig config{sigma, NoiseShape::Elementwise, 1, options.seed};
          NoiseStream stream(options.seed, run++);
          const DescentCheckResult r =
              descent_check(problem, x, config, stream, fraction * admissible, kOracleSamples);
          if (!r.pass) ++failures;
          const double scale = std::max(1.0, std::abs(problem.value(x)));
          worst = std::max(worst, (r.mean_lhs - r.rhs - 3.0 * r.standard_error) / scale);
        }
        report.check_le(fmt::format("{} sigma={:g} step={:g}*max: failing points (worst "
                                    "scaled excess {:.3g})",
                                    problem.name(), sigma, fraction, worst),
                        failures, 0.0);
      }
    }
  }
  return report;
}

SuiteReport verify_schedules(const VerifyOptions&) {
  SuiteReport report{"schedules", {}};
  constexpr std::int64_t kMaxK = 1000000;
  struct Setting {
    double sigma;
    double lipschitz;
  };
  for (const Setting st : {Setting{0.0, 1.0}, Setting{1.0, 12.0}, Setting{50.0, 240.0}}) {
    const SmoothnessProfile profile(0.0, st.lipschitz);
    for (double m : {0.0, 1.0, 1.5}) {
      double worst = -std::numeric_limits<double>::infinity();
      double worst_tilde = 0.0;
      bool decreasing = true;
      ScheduleParams prev = build_schedule(Regime::Convex, profile, st.sigma, m, std::nullopt, 0);
      for (std::int64_t k = 1; k <= kMaxK; ++k) {
        const ScheduleParams cur =
            build_schedule(Regime::Convex, profile, st.sigma, m, std::nullopt, k);
        worst = std::max(worst, schedule_condition_residual(prev, cur));
        decreasing = decreasing && cur.gamma < prev.gamma;
        const double expected = prev.alpha / (1.0 + m * prev.alpha);
        worst_tilde = std::max(worst_tilde, std::abs(prev.alpha_tilde - expected) / expected);
        prev = cur;
      }
      const std::string tag =
          fmt::format("convex sigma={:g} L={:g} m={:g}", st.sigma, st.lipschitz, m);
      report.check_le(tag + " max residual over k<=1e6", worst, 1e-12);
      report.check_le(tag + " gamma strictly decreasing (0 = yes)", decreasing ? 0.0 : 1.0, 0.0);
      report.check_le(tag + " alpha_tilde vs alpha/(1+m alpha) rel. error", worst_tilde, 1e-15);
    }
  }
  for (double mu : {0.01, 0.25}) {
    for (double sigma : {0.0, 1.0}) {
      for (double m : {0.0, 1.0}) {
        const SmoothnessProfile profile(mu, 1.0);
        double worst = 0.0;
        for (std::int64_t k = 0; k < 1000; ++k) {
          const auto a = build_schedule(Regime::StronglyConvex, profile, sigma, m, std::nullopt, k);
          const auto b =
              build_schedule(Regime::StronglyConvex, profile, sigma, m, std::nullopt, k + 1);
          worst = std::max(worst, std::abs(schedule_condition_residual(a, b)));
        }
        report.check_le(
            fmt::format("strongly convex mu={:g} sigma={:g} m={:g} |residual|", mu, sigma, m),
            worst, 0.0);
      }
    }
  }
  return report;
}

SuiteReport verify_snag_equivalence(const VerifyOptions& options) {
  SuiteReport report{"snag-equivalence", {}};
  const std::vector<double> eig{0.1, 1.0, 3.0};
  const ObjectiveProblem problem = make_quadratic(eig, Point{0.5, -1.0, 0.25});
  const double lipschitz = problem.profile().lipschitz();
  const double sigma = 1.0;
  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst = 0.0;
  int non_finite = 0;
  for (int tuple = 0; tuple < 1000; ++tuple) {
    SnagHnagParams p;
    p.alpha_next = 0.05 + 0.95 * unit(rng);
    p.beta_next = (0.05 + 0.95 * unit(rng)) / (p.alpha_next * lipschitz * (1.0 + sigma * sigma));
    p.gamma_next = 0.1 + 9.9 * unit(rng);
    p.mu = unit(rng) < 0.25 ? 0.0 : std::min(0.1, p.gamma_next) * unit(rng);
    const SnagOriginalParams o = to_original(p);

    std::vector<double> xs(3), vs(3);
    for (std::size_t i = 0; i < 3; ++i) {
      xs[i] = 4.0 * unit(rng) - 2.0;
      vs[i] = 4.0 * unit(rng) - 2.0;
    }
    SnagState a{Point(xs), Point(vs), 0};
    SnagState b = a;
    const MnsOracleConfig config{sigma, NoiseShape::Elementwise, 1, options.seed};
    MnsOracle oracle_a(config, static_cast<std::uint64_t>(tuple));
    MnsOracle oracle_b(config, static_cast<std::uint64_t>(tuple));
    for (int step = 0; step < 100; ++step) {
      a = snag_step_original(a, o, oracle_a, problem);
      b = snag_step_hnag(b, p, oracle_b, problem);
      if (!a.x.is_finite() || !b.x.is_finite() || !a.v.is_finite() || !b.v.is_finite()) {
        ++non_finite;
        break;
      }
      double scale = 0.0;
      for (std::size_t i = 0; i < 3; ++i) {
        scale = std::max({scale, std::abs(a.x[i]), std::abs(b.x[i]), std::abs(a.v[i]),
                          std::abs(b.v[i])});
      }
      if (scale == 0.0) continue;
      for (std::size_t i = 0; i < 3; ++i) {
        worst = std::max(worst, std::abs(a.x[i] - b.x[i]) / scale);
        worst = std::max(worst, std::abs(a.v[i] - b.v[i]) / scale);
      }
    }
  }
  report.check_le("max per-coordinate relative deviation (1000 tuples x 100 steps)", worst,
                  1e-12);
  report.check_le("non-finite trajectories", non_finite, 0.0);
  return report;
}

SuiteReport verify_deterministic_rates(const VerifyOptions& options) {
  SuiteReport report{"deterministic-rates", {}};
  const ContractionPolicy policy = ContractionPolicy::deterministic();

  auto run = [&](const ProblemSpec& problem, MethodSpec method, std::vector<double> x0,
                 std::int64_t n_iters) {
    ExperimentSpec spec;
    spec.problem = problem;
    spec.method = method;
    spec.sigma = 0.0;
    spec.n_runs = 1;
    spec.n_iters = n_iters;
    spec.base_seed = options.seed;
    spec.x0 = std::move(x0);
    const TrajectoryStats stats = run_monte_carlo(spec, 1);
    const std::string tag = spec.label() + (method.regime == Regime::Convex ? " convex" : "");
    add_contraction(report, tag, stats, policy);

    // The energy never increases along a noiseless trajectory.
    double worst_increase = 0.0;
    double prev = stats.mean_initial_energy;
    for (const StatsRow& row : stats.rows) {
      worst_increase = std::max(worst_increase, (row.mean_energy - prev) / std::max(prev, 1e-290));
      prev = row.mean_energy;
    }
    report.check_le(tag + " max relative energy increase per step", worst_increase, 1e-12);
  };

  for (double kappa : {10.0, 100.0, 1e4}) {
    const ProblemSpec q = ProblemSpec::quadratic({1.0 / kappa, 1.0});
    for (MethodId id : {MethodId::Shang, MethodId::ShangPP}) {
      MethodSpec sc = MethodSpec::of(id);
      sc.m = 1.0;
      run(q, sc, unit_diagonal(2), 10000);
      MethodSpec cv = sc;
      cv.regime = Regime::Convex;
      run(q, cv, unit_diagonal(2), 10000);
    }
  }
  for (int d : {4, 16}) {
    run(ProblemSpec::fd(d), MethodSpec::of(MethodId::Shang), {1.0}, 10000);
    for (double m : {1.0, 1.5}) {
      MethodSpec pp = MethodSpec::of(MethodId::ShangPP);
      pp.m = m;
      run(ProblemSpec::fd(d), pp, {1.0}, 10000);
    }
  }
  return report;
}

SuiteReport verify_strongly_convex_shang(const VerifyOptions& options) {
  SuiteReport report{"stochastic-rates/shang-strongly-convex", {}};
  ExperimentSpec spec;
  spec.problem = ProblemSpec::quadratic({0.01, 1.0});
  spec.method = MethodSpec::of(MethodId::Shang);
  spec.method.step = 0.05;
  spec.sigma = 1.0;
  spec.n_runs = 200;
  spec.n_iters = 2000;
  spec.base_seed = options.seed;
  spec.x0 = unit_diagonal(2);
  const TrajectoryStats stats = run_monte_carlo(spec, options.jobs);
  add_contraction(report, spec.label(), stats, ContractionPolicy::stochastic());
  return report;
}

SuiteReport verify_strongly_convex_shangpp(const VerifyOptions& options) {
  SuiteReport report{"stochastic-rates/shangpp-strongly-convex", {}};
  ExperimentSpec spec;
  spec.problem = ProblemSpec::quadratic({0.01, 1.0});
  spec.method = MethodSpec::of(MethodId::ShangPP);
  spec.method.m = 1.0;
  spec.method.step = 0.05;
  spec.sigma = 1.0;
  spec.n_runs = 200;
  spec.n_iters = 2000;
  spec.base_seed = options.seed;
  spec.x0 = unit_diagonal(2);
  const TrajectoryStats stats = run_monte_carlo(spec, options.jobs);
  add_contraction(report, spec.label(), stats, ContractionPolicy::stochastic());

  // The SHANG++ envelope lies below the SHANG envelope at equal step.
  const RateParams pp{RateKind::ShangPPStronglyConvex, 0.0, 0.05, 1.0};
  const RateParams plain{RateKind::ShangStronglyConvex, 0.05, 0.05, 0.0};
  double worst = 0.0;
  for (std::int64_t k = 1; k <= spec.n_iters; ++k) {
    worst = std::max(worst, envelope_at(pp, k, 1.0) / envelope_at(plain, k, 1.0));
  }
  report.check_le("max (1-a)^k / (1+a)^-k over 1<=k<=2000", worst, 1.0);
  return report;
}

SuiteReport verify_convex_rates(const VerifyOptions& options) {
  SuiteReport report{"stochastic-rates/convex", {}};
  for (int d : {4, 16}) {
    for (double sigma : {0.0, 10.0, 50.0}) {
      for (double m : {0.0, 1.0}) {
        ExperimentSpec spec;
        spec.problem = ProblemSpec::fd(d);
        spec.method = MethodSpec::of(m == 0.0 ? MethodId::Shang : MethodId::ShangPP);
        spec.method.m = m;
        spec.sigma = sigma;
        spec.shape = NoiseShape::ScalarFactor;
        spec.n_runs = 200;
        spec.n_iters = 10000;
        spec.base_seed = options.seed;
        spec.x0 = {1.0};
        const TrajectoryStats stats = run_monte_carlo(spec, options.jobs);
        add_contraction(report, spec.label(), stats, ContractionPolicy::stochastic());
      }
    }
  }
  return report;
}

SuiteReport verify_stochastic_rates(const VerifyOptions& options) {
  SuiteReport report{"stochastic-rates", {}};
  for (const SuiteReport& part :
       {verify_strongly_convex_shang(options), verify_strongly_convex_shangpp(options),
        verify_convex_rates(options)}) {
    report.checks.insert(report.checks.end(), part.checks.begin(), part.checks.end());
  }
  return report;
}

}  // namespace shangpp
