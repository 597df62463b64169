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

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "shangpp/analysis.hpp"
#include "shangpp/csv.hpp"
#include "shangpp/harness.hpp"
#include "shangpp/noise.hpp"
#include "shangpp/problems.hpp"
#include "shangpp/schedule.hpp"
#include "shangpp/verify.hpp"

namespace py = pybind11;
using namespace shangpp;

namespace {

NoiseShape parse_shape(const std::string& s) {
  if (s == "scalar") return NoiseShape::ScalarFactor;
  if (s == "elementwise") return NoiseShape::Elementwise;
  throw InvalidParameter("noise shape must be 'scalar' or 'elementwise', got '" + s + "'");
}

ExperimentSpec make_spec(const std::string& problem, const std::string& method, double sigma,
                         std::int64_t n_runs, std::int64_t n_iters, std::uint64_t seed,
                         std::optional<std::vector<double>> x0, double m,
                         std::int64_t record_every, const std::string& shape,
                         std::optional<double> hyper_sigma, std::optional<double> step,
                         std::optional<double> lr, std::optional<double> momentum,
                         std::optional<std::string> regime) {
  ExperimentSpec s;
  s.problem = ProblemSpec::parse(problem);
  s.method = MethodSpec::of(parse_method(method));
  s.method.m = m;
  s.method.hyper_sigma = hyper_sigma;
  s.method.step = step;
  s.method.lr = lr;
  s.method.momentum = momentum;
  if (regime) {
    if (*regime == "convex") s.method.regime = Regime::Convex;
    else if (*regime == "strongly_convex") s.method.regime = Regime::StronglyConvex;
    else throw InvalidParameter("regime must be 'convex' or 'strongly_convex'");
  }
  s.sigma = sigma;
  s.n_runs = n_runs;
  s.n_iters = n_iters;
  s.base_seed = seed;
  s.record_every = record_every;
  s.shape = parse_shape(shape);
  s.x0 = x0.value_or(std::vector<double>(s.problem.dimension(), 1.0));
  s.validate();
  return s;
}

py::dict stats_to_dict(const TrajectoryStats& st) {
  std::vector<std::int64_t> k, n, div;
  std::vector<double> ms, ss, me, se, b;
  for (const StatsRow& r : st.rows) {
    k.push_back(r.k);
    ms.push_back(r.mean_subopt);
    ss.push_back(r.std_subopt);
    me.push_back(r.mean_energy);
    se.push_back(r.std_energy);
    b.push_back(r.bound);
    n.push_back(r.n_runs);
    div.push_back(r.diverged_runs);
  }
  std::ostringstream csv;
  write_stats_csv(csv, st);
  py::dict d;
  d["k"] = k;
  d["mean_subopt"] = ms;
  d["std_subopt"] = ss;
  d["mean_energy"] = me;
  d["std_energy"] = se;
  d["bound"] = b;
  d["n_runs"] = n;
  d["diverged_runs"] = div;
  d["initial_energy"] = st.mean_initial_energy;
  d["final_mean_subopt"] = st.final_mean_subopt;
  d["total_diverged"] = st.diverged_runs;
  d["all_diverged"] = st.all_diverged;
  d["rate"] = st.rate ? py::object(py::str(to_string(st.rate->kind))) : py::object(py::none());
  d["csv"] = csv.str();
  return d;
}

#define SPEC_ARGS                                                                              \
  py::arg("problem"), py::arg("method"), py::arg("sigma") = 0.0, py::arg("n_runs") = 1,        \
      py::arg("n_iters") = 100, py::arg("seed") = 0, py::arg("x0") = py::none(),               \
      py::arg("m") = 1.0, py::arg("record_every") = 1, py::arg("shape") = "elementwise",       \
      py::arg("hyper_sigma") = py::none(), py::arg("step") = py::none(),                       \
      py::arg("lr") = py::none(), py::arg("momentum") = py::none(),                            \
      py::arg("regime") = py::none()

}  // namespace

PYBIND11_MODULE(_shangpp, m) {
  m.doc() = "Accelerated stochastic gradient methods under multiplicative noise";

  py::register_exception<InvalidParameter>(m, "InvalidParameter", PyExc_ValueError);
  py::register_exception<ContractViolation>(m, "ContractViolation", PyExc_RuntimeError);

  py::enum_<Regime>(m, "Regime")
      .value("STRONGLY_CONVEX", Regime::StronglyConvex)
      .value("CONVEX", Regime::Convex);
  py::enum_<RateKind>(m, "RateKind")
      .value("SHANG_STRONGLY_CONVEX", RateKind::ShangStronglyConvex)
      .value("SHANG_CONVEX", RateKind::ShangConvex)
      .value("SHANGPP_STRONGLY_CONVEX", RateKind::ShangPPStronglyConvex)
      .value("SHANGPP_CONVEX", RateKind::ShangPPConvex);

  m.def("fd_value", &fd_value, py::arg("d"), py::arg("x"));
  m.def("fd_gradient", &fd_gradient, py::arg("d"), py::arg("x"));

  m.def(
      "build_schedule",
      [](Regime regime, double mu, double lipschitz, double sigma, double mm,
         std::optional<double> step, std::int64_t k) {
        const ScheduleParams s =
            build_schedule(regime, SmoothnessProfile(mu, lipschitz), sigma, mm, step, k);
        py::dict d;
        d["k"] = s.k;
        d["alpha"] = s.alpha;
        d["alpha_tilde"] = s.alpha_tilde;
        d["beta"] = s.beta;
        d["gamma"] = s.gamma;
        d["energy_gamma"] = s.energy_gamma;
        d["aux_step"] = s.aux_step;
        return d;
      },
      py::arg("regime"), py::arg("mu"), py::arg("lipschitz"), py::arg("sigma") = 0.0,
      py::arg("m") = 0.0, py::arg("step") = py::none(), py::arg("k") = 0);

  m.def(
      "theorem_bound",
      [](RateKind kind, std::int64_t k, double e0, double alpha, double alpha_tilde, double mm) {
        return theorem_bound(RateParams{kind, alpha, alpha_tilde, mm}, k, e0);
      },
      py::arg("kind"), py::arg("k"), py::arg("e0") = 1.0, py::arg("alpha") = 0.0,
      py::arg("alpha_tilde") = 0.0, py::arg("m") = 0.0);

  m.def(
      "empirical_mns_constant",
      [](double sigma, std::vector<double> gradient, long n_samples, int k, const std::string& shape,
         std::uint64_t seed, std::uint64_t run) {
        MnsOracleConfig c{sigma, parse_shape(shape), k, seed};
        c.validate();
        NoiseStream stream(seed, run);
        const Estimate e = empirical_mns_constant(c, stream, Point(std::move(gradient)), n_samples);
        return py::make_tuple(e.mean, e.standard_error);
      },
      py::arg("sigma"), py::arg("gradient"), py::arg("n_samples") = 100000, py::arg("k") = 1,
      py::arg("shape") = "elementwise", py::arg("seed") = 0, py::arg("run") = 0);

  m.def(
      "run_monte_carlo",
      [](const std::string& problem, const std::string& method, double sigma, std::int64_t n_runs,
         std::int64_t n_iters, std::uint64_t seed, std::optional<std::vector<double>> x0, double mm,
         std::int64_t record_every, const std::string& shape, std::optional<double> hyper_sigma,
         std::optional<double> step, std::optional<double> lr, std::optional<double> momentum,
         std::optional<std::string> regime, unsigned jobs) {
        const ExperimentSpec s = make_spec(problem, method, sigma, n_runs, n_iters, seed, x0, mm,
                                           record_every, shape, hyper_sigma, step, lr, momentum,
                                           regime);
        TrajectoryStats st;
        {
          py::gil_scoped_release release;
          st = run_monte_carlo(s, jobs);
        }
        return stats_to_dict(st);
      },
      SPEC_ARGS, py::arg("jobs") = 1);

  m.def(
      "sigma_sweep",
      [](const std::string& problem, const std::string& method, std::vector<double> sigmas,
         std::int64_t n_runs, std::int64_t n_iters, std::uint64_t seed,
         std::optional<std::vector<double>> x0, double mm, const std::string& shape,
         std::optional<double> hyper_sigma, std::optional<double> lr,
         std::optional<double> momentum, unsigned jobs) {
        const ExperimentSpec s = make_spec(problem, method, 0.0, n_runs, n_iters, seed, x0, mm, 1,
                                           shape, hyper_sigma, std::nullopt, lr, momentum,
                                           std::nullopt);
        std::vector<SweepRow> rows;
        {
          py::gil_scoped_release release;
          rows = sigma_sweep(s, sigmas, jobs);
        }
        py::list out;
        for (const SweepRow& r : rows) {
          py::dict d;
          d["method"] = r.method;
          d["sigma"] = r.sigma;
          d["final_mean_suboptimality"] = r.final_mean_subopt;
          d["delta"] = r.delta;
          d["log10_ratio"] = r.log10_ratio;
          d["diverged_runs"] = r.diverged_runs;
          d["divergent"] = r.divergent;
          out.append(d);
        }
        return out;
      },
      py::arg("problem"), py::arg("method"), py::arg("sigmas"), py::arg("n_runs") = 20,
      py::arg("n_iters") = 100, py::arg("seed") = 0, py::arg("x0") = py::none(),
      py::arg("m") = 1.0, py::arg("shape") = "elementwise", py::arg("hyper_sigma") = py::none(),
      py::arg("lr") = py::none(), py::arg("momentum") = py::none(), py::arg("jobs") = 1);

  m.def("suite_names", &suite_names);
  m.def(
      "verify",
      [](const std::string& suite, std::uint64_t seed, unsigned jobs) {
        SuiteReport r;
        {
          py::gil_scoped_release release;
          r = run_suite(suite, VerifyOptions{seed, jobs});
        }
        py::list checks;
        for (const CheckResult& c : r.checks) {
          checks.append(py::make_tuple(c.name, c.measured, c.threshold, c.pass));
        }
        py::dict d;
        d["suite"] = r.suite;
        d["passed"] = r.passed();
        d["checks"] = checks;
        return d;
      },
      py::arg("suite"), py::arg("seed") = VerifyOptions{}.seed, py::arg("jobs") = 1);
}
