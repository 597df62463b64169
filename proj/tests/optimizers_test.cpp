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

#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "shangpp/optimizers.hpp"
#include "shangpp/problems.hpp"

namespace shangpp {
namespace {

MnsOracle Oracle(double sigma, std::uint64_t seed = 1, std::uint64_t run = 0) {
  MnsOracleConfig c;
  c.sigma = sigma;
  c.seed = seed;
  return MnsOracle(c, run);
}

ObjectiveProblem HalfSquare() { return make_quadratic({1.0}, Point{0.0}); }

TEST(ShangStepTest, QuadraticByHand) {
  const ObjectiveProblem q = HalfSquare();
  const SmoothnessProfile& p = q.profile();
  MnsOracle oracle = Oracle(0.0);
  // alpha = 1, gamma = mu = 1, beta = alpha / mu = 1.
  const ScheduleParams s0 = build_schedule(Regime::StronglyConvex, p, 0.0, 0.0, 1.0, 0);
  ASSERT_DOUBLE_EQ(s0.beta, 1.0);
  const ShangState z0 = shang_init(Point{1.0}, Point{1.0}, s0, oracle, q);
  EXPECT_EQ(z0.last_g, Point{1.0});
  EXPECT_EQ(z0.x_plus, Point{0.0});
  const ShangState z1 = shang_step(z0, s0, oracle, q);
  EXPECT_DOUBLE_EQ(z1.x[0], 0.5);
  EXPECT_DOUBLE_EQ(z1.last_g[0], 0.5);
  EXPECT_DOUBLE_EQ(z1.v[0], 0.5);
  EXPECT_EQ(z1.k, 1);
}

TEST(ShangStepTest, ConvexF4FirstStep) {
  const ObjectiveProblem f = make_fd_problem(4);
  MnsOracle oracle = Oracle(0.0);
  const ScheduleParams s0 = build_schedule(Regime::Convex, f.profile(), 0.0, 0.0, {}, 0);
  const ShangState z0 = shang_init(Point{1.0}, Point{1.0}, s0, oracle, f);
  const ShangState z1 = shang_step(z0, s0, oracle, f);
  EXPECT_NEAR(z1.x[0], 8.0 / 9.0, 1e-15);
  // v_1 = v_0 - (alpha_0 / gamma_0) f'(x_1) with mu = 0.
  EXPECT_NEAR(z1.v[0], 1.0 - (2.0 / 48.0) * 4.0 * std::pow(8.0 / 9.0, 3), 1e-15);
}

TEST(ShangStepTest, MinimizerIsFixedPoint) {
  for (double sigma : {0.0, 5.0}) {
    const ObjectiveProblem q = make_quadratic({0.1, 1.0}, Point{2.0, -1.0});
    MnsOracle oracle = Oracle(sigma);
    ShangState z = shang_init(q.minimizer(), q.minimizer(),
                              build_schedule(Regime::StronglyConvex, q.profile(), sigma, 0, {}, 0),
                              oracle, q);
    for (std::int64_t k = 0; k < 50; ++k) {
      const ScheduleParams s = build_schedule(Regime::StronglyConvex, q.profile(), sigma, 0, {}, k);
      z = shang_step(z, s, oracle, q);
      ASSERT_EQ(z.x, q.minimizer());
      ASSERT_EQ(z.v, q.minimizer());
      ASSERT_EQ(z.x_plus, q.minimizer());
    }
  }
}

TEST(ShangStepTest, ContractViolations) {
  const ObjectiveProblem q = HalfSquare();
  MnsOracle oracle = Oracle(0.0);
  const ScheduleParams s0 = build_schedule(Regime::StronglyConvex, q.profile(), 0, 0, 0.5, 0);
  const ScheduleParams s1 = build_schedule(Regime::StronglyConvex, q.profile(), 0, 0, 0.5, 1);
  EXPECT_THROW(shang_init(Point{1.0}, Point{1.0}, s1, oracle, q), ContractViolation);
  const ShangState z0 = shang_init(Point{1.0}, Point{1.0}, s0, oracle, q);
  EXPECT_THROW(shang_step(z0, s1, oracle, q), ContractViolation);
  EXPECT_THROW(shang_init(Point{1.0, 1.0}, Point{1.0, 1.0}, s0, oracle, q), ContractViolation);
}

TEST(ShangPPStepTest, QuadraticByHand) {
  const ObjectiveProblem q = HalfSquare();
  MnsOracle oracle = Oracle(0.0);
  const ScheduleParams s0 = build_schedule(Regime::StronglyConvex, q.profile(), 0.0, 1.0, 0.9, 0);
  const ShangState z0 = shang_init(Point{1.0}, Point{1.0}, s0, oracle, q);
  const ShangState z1 = shangpp_step(z0, s0, oracle, q);
  EXPECT_NEAR(z1.x[0], 1.09 / 1.9, 1e-15);
}

// Runs both methods from the same stream and demands bitwise equality.
void ExpectReduction(const ObjectiveProblem& problem, Regime regime, const Point& x0) {
  MnsOracle a = Oracle(1.0, 17, 2), b = Oracle(1.0, 17, 2);
  const auto sched = [&](std::int64_t k) {
    return build_schedule(regime, problem.profile(), 1.0, 0.0, {}, k);
  };
  ShangState za = shang_init(x0, x0, sched(0), a, problem);
  ShangState zb = shang_init(x0, x0, sched(0), b, problem);
  for (std::int64_t k = 0; k < 1000; ++k) {
    const ScheduleParams s = sched(k);
    za = shang_step(za, s, a, problem);
    zb = shangpp_step(zb, s, b, problem);
    ASSERT_EQ(za.x, zb.x) << k;
    ASSERT_EQ(za.v, zb.v) << k;
    ASSERT_EQ(za.x_plus, zb.x_plus) << k;
  }
}

TEST(ShangPPStepTest, ReducesToShangAtMZero) {
  ExpectReduction(make_fd_problem(4), Regime::Convex, Point{1.0});
  ExpectReduction(make_quadratic({0.01, 1.0}, Point{0.0, 0.0}), Regime::StronglyConvex,
                  Point{0.6, 0.8});
  ExpectReduction(make_quadratic({0.01, 1.0}, Point{0.0, 0.0}), Regime::Convex, Point{0.6, 0.8});
}

TEST(DlStepTest, AlphaTilde) {
  // alpha_tilde = 0.5 / (1 + 1.5 * 0.5) = 2/7; with a zero gradient the
  // step only averages x toward v.
  const ObjectiveProblem q = HalfSquare();
  MnsOracle oracle = Oracle(3.0);
  DlState st = shangpp_dl_init(Point{0.0});
  st.v = Point{1.0};
  const DlState next = shangpp_dl_step(st, 0.5, 2.0, 1.5, oracle, q);
  EXPECT_EQ(next.v, Point{1.0});
  EXPECT_NEAR(next.x[0], (2.0 / 7.0) / (1.0 + 2.0 / 7.0), 1e-16);
  EXPECT_EQ(next.k, 2);
}

TEST(DlStepTest, QuadraticByHand) {
  const ObjectiveProblem q = HalfSquare();
  MnsOracle oracle = Oracle(0.0);
  const DlState st = shangpp_dl_init(Point{1.0});
  EXPECT_EQ(st.v, Point{1.0});
  EXPECT_EQ(st.k, 1);
  const DlState next = shangpp_dl_step(st, 0.5, 1.0, 0.0, oracle, q);
  EXPECT_DOUBLE_EQ(next.v[0], 0.5);
  EXPECT_DOUBLE_EQ(next.x[0], 2.0 / 3.0);
}

TEST(SnagTest, OriginalIdentityParametersFreeze) {
  const ObjectiveProblem q = make_quadratic({1.0, 2.0}, Point{0.0, 0.0});
  MnsOracle oracle = Oracle(2.0);
  SnagState st{Point{1.0, -1.0}, Point{0.5, 0.5}, 0};
  const SnagOriginalParams id{1.0, 0.0, 1.0, 0.0};
  for (int i = 0; i < 10; ++i) st = snag_step_original(st, id, oracle, q);
  EXPECT_EQ(st.x, (Point{1.0, -1.0}));
  EXPECT_EQ(st.v, (Point{0.5, 0.5}));
  EXPECT_EQ(st.k, 10);
}

TEST(SnagTest, FrozenAtMinimizer) {
  const ObjectiveProblem q = make_quadratic({1.0, 2.0}, Point{1.0, 3.0});
  MnsOracle oracle = Oracle(2.0);
  SnagState a{q.minimizer(), q.minimizer(), 0}, b = a;
  for (int i = 0; i < 10; ++i) {
    a = snag_step_original(a, {0.5, 0.2, 0.5, 0.1}, oracle, q);
    b = snag_step_hnag(b, {1.0, 0.2, 1.0, 1.0}, oracle, q);
  }
  EXPECT_EQ(a.x, q.minimizer());
  EXPECT_EQ(a.v, q.minimizer());
  EXPECT_EQ(b.x, q.minimizer());
  EXPECT_EQ(b.v, q.minimizer());
}

TEST(SnagTest, OriginalByHand) {
  const ObjectiveProblem q = HalfSquare();
  MnsOracle oracle = Oracle(0.0);
  const SnagState st = snag_step_original({Point{1.0}, Point{1.0}, 0}, {0.5, 0.2, 0.5, 0.1}, oracle, q);
  EXPECT_DOUBLE_EQ(st.v[0], 0.9);
  EXPECT_DOUBLE_EQ(st.x[0], 0.85);
}

TEST(SnagTest, HnagByHandMatchesOriginal) {
  const ObjectiveProblem q = HalfSquare();
  MnsOracle oracle = Oracle(0.0);
  const SnagHnagParams h{1.0, 0.2, 1.0, 1.0};
  const SnagOriginalParams o = to_original(h);
  EXPECT_DOUBLE_EQ(o.alpha_hat_next, 0.5);
  EXPECT_DOUBLE_EQ(o.s, 0.2);
  EXPECT_DOUBLE_EQ(o.beta_hat, 0.5);
  EXPECT_DOUBLE_EQ(o.eta, 0.5);
  const SnagState a = snag_step_hnag({Point{1.0}, Point{1.0}, 0}, h, oracle, q);
  EXPECT_DOUBLE_EQ(a.v[0], 0.5);
  EXPECT_DOUBLE_EQ(a.x[0], 0.65);
  const SnagState b = snag_step_original({Point{1.0}, Point{1.0}, 0}, o, oracle, q);
  EXPECT_DOUBLE_EQ(b.v[0], 0.5);
  EXPECT_DOUBLE_EQ(b.x[0], 0.65);
}

TEST(BaselineTest, SgdStep) {
  const ObjectiveProblem q = HalfSquare();
  MnsOracle oracle = Oracle(0.0);
  const BaselineState st = baseline_step(BaselineMethod::Sgd, baseline_init(Point{1.0}), 0.1, 0.0, oracle, q);
  EXPECT_DOUBLE_EQ(st.x[0], 0.9);
  EXPECT_EQ(st.k, 1);
}

TEST(BaselineTest, ZeroMomentumHeavyBallIsSgd) {
  const ObjectiveProblem q = make_quadratic({0.3, 1.0}, Point{0.0, 1.0});
  MnsOracle a = Oracle(1.0, 5), b = Oracle(1.0, 5);
  BaselineState sa = baseline_init(Point{2.0, 2.0}), sb = sa;
  for (int i = 0; i < 100; ++i) {
    sa = baseline_step(BaselineMethod::Sgd, sa, 0.2, 0.0, a, q);
    sb = baseline_step(BaselineMethod::Shb, sb, 0.2, 0.0, b, q);
    ASSERT_EQ(sa.x, sb.x);
  }
}

TEST(BaselineTest, HeavyBallByHand) {
  const ObjectiveProblem q = HalfSquare();
  MnsOracle oracle = Oracle(0.0);
  BaselineState st = baseline_init(Point{1.0});
  st = baseline_step(BaselineMethod::Shb, st, 0.1, 0.5, oracle, q);
  EXPECT_DOUBLE_EQ(st.x[0], 0.9);
  // b = 0.5 * 1 + 0.9, x = 0.9 - 0.1 * 1.4
  st = baseline_step(BaselineMethod::Shb, st, 0.1, 0.5, oracle, q);
  EXPECT_DOUBLE_EQ(st.x[0], 0.9 - 0.14);
}

TEST(BaselineTest, NesterovMatchesReferenceAndDecays) {
  const std::vector<double> lam{0.1, 1.0};
  const ObjectiveProblem q = make_quadratic(lam, Point{0.0, 0.0});
  MnsOracle oracle = Oracle(0.0);
  BaselineState st = baseline_init(Point{1.0, 1.0});
  std::vector<double> x{1.0, 1.0}, prev = x;
  std::vector<double> f;
  for (int k = 0; k < 200; ++k) {
    st = baseline_step(BaselineMethod::Nag, st, 1.0, 0.9, oracle, q);
    for (int i = 0; i < 2; ++i) {
      const double y = x[i] + 0.9 * (x[i] - prev[i]);
      prev[i] = x[i];
      x[i] = y - lam[i] * y;
    }
    ASSERT_NEAR(st.x[0], x[0], 1e-14);
    ASSERT_NEAR(st.x[1], x[1], 1e-14);
    f.push_back(q.value(st.x));
  }
  // Momentum makes f oscillate, but its running envelope shrinks.
  double prev_max = INFINITY;
  for (int w = 0; w < 8; ++w) {
    double mx = 0.0;
    for (int k = 25 * w; k < 25 * (w + 1); ++k) mx = std::max(mx, f[k]);
    EXPECT_LT(mx, prev_max);
    prev_max = mx;
  }
  EXPECT_LT(f.back(), 1e-15 * f.front());
}

TEST(BaselineTest, OneDrawPerStep) {
  const ObjectiveProblem q = HalfSquare();
  for (BaselineMethod m : {BaselineMethod::Sgd, BaselineMethod::Shb, BaselineMethod::Nag}) {
    MnsOracle oracle = Oracle(1.0);
    BaselineState st = baseline_init(Point{1.0});
    for (int i = 0; i < 7; ++i) st = baseline_step(m, st, 0.1, 0.5, oracle, q);
    EXPECT_EQ(oracle.draws(), 7u);
  }
}

}  // namespace
}  // namespace shangpp
