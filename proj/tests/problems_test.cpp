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
#include <random>

#include <gtest/gtest.h>

#include "shangpp/problems.hpp"

namespace shangpp {
namespace {

TEST(FdTest, ValueExamples) {
  EXPECT_EQ(fd_value(4, 0.0), 0.0);
  EXPECT_DOUBLE_EQ(fd_value(4, 0.5), 0.0625);
  EXPECT_DOUBLE_EQ(fd_value(4, 2.0), 5.0);
  EXPECT_DOUBLE_EQ(fd_value(4, -2.0), 5.0);
  EXPECT_DOUBLE_EQ(fd_value(16, 1.0), 1.0);
}

TEST(FdTest, GradientExamples) {
  EXPECT_EQ(fd_gradient(4, 0.0), 0.0);
  EXPECT_DOUBLE_EQ(fd_gradient(4, 0.5), 0.5);
  EXPECT_DOUBLE_EQ(fd_gradient(16, -1.5), -16.0);
  EXPECT_DOUBLE_EQ(fd_gradient(4, 3.0), 4.0);
}

TEST(FdTest, RejectsSmallExponent) {
  EXPECT_THROW(fd_value(1, 0.5), InvalidParameter);
  EXPECT_THROW(fd_gradient(0, 0.5), InvalidParameter);
  EXPECT_THROW(make_fd_problem(1), InvalidParameter);
}

TEST(FdTest, GradientMatchesCentralDifferences) {
  const double h = 1e-6;
  for (int d : {2, 4, 16}) {
    for (double x = -2.5; x <= 2.5; x += 0.0625) {
      if (std::fabs(std::fabs(x) - 1.0) < 2 * h) continue;
      const double fd = (fd_value(d, x + h) - fd_value(d, x - h)) / (2 * h);
      EXPECT_NEAR(fd_gradient(d, x), fd, 1e-6 * std::max(1.0, std::fabs(fd))) << d << " " << x;
    }
  }
}

TEST(FdTest, ContinuousAtTheKink) {
  for (int d : {2, 4, 16}) {
    const double below = std::nextafter(1.0, 0.0);
    EXPECT_NEAR(fd_value(d, below), fd_value(d, 1.0), 1e-12);
    EXPECT_NEAR(fd_gradient(d, below), fd_gradient(d, 1.0), 1e-12);
  }
}

TEST(FdTest, GradientIsLipschitzWithDdMinusOne) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int d : {2, 4, 16}) {
    const double lip = d * (d - 1.0);
    double worst = 0.0;
    for (int i = 0; i < 20000; ++i) {
      const double x = u(rng), y = u(rng);
      if (x == y) continue;
      worst = std::max(worst, std::fabs(fd_gradient(d, x) - fd_gradient(d, y)) / std::fabs(x - y));
      // Convexity: monotone gradient.
      EXPECT_GE((fd_gradient(d, x) - fd_gradient(d, y)) * (x - y), 0.0);
    }
    EXPECT_LE(worst, lip * (1 + 1e-12));
    // The constant is attained as x -> 1 from below, so it is not loose.
    const double a = 1.0 - 2e-6, b = 1.0 - 1e-6;
    EXPECT_NEAR((fd_gradient(d, b) - fd_gradient(d, a)) / (b - a), lip, 1e-3 * lip);
  }
}

TEST(FdProblemTest, Profile) {
  const ObjectiveProblem f = make_fd_problem(4);
  EXPECT_EQ(f.dimension(), 1u);
  EXPECT_EQ(f.profile().mu(), 0.0);
  EXPECT_EQ(f.profile().lipschitz(), 12.0);
  EXPECT_EQ(make_fd_problem(16).profile().lipschitz(), 240.0);
  EXPECT_EQ(f.minimizer(), Point{0.0});
  EXPECT_EQ(f.minimum_value(), 0.0);
  EXPECT_DOUBLE_EQ(f.value(Point{2.0}), 5.0);
  EXPECT_EQ(f.gradient(Point{0.5}), Point{0.5});
}

TEST(QuadraticTest, Examples) {
  const ObjectiveProblem q1 = make_quadratic({1.0}, Point{0.0});
  EXPECT_EQ(q1.profile().mu(), 1.0);
  EXPECT_EQ(q1.profile().lipschitz(), 1.0);
  EXPECT_DOUBLE_EQ(q1.value(Point{3.0}), 4.5);

  const ObjectiveProblem q2 = make_quadratic({0.01, 1.0}, Point{0.0, 0.0});
  EXPECT_EQ(q2.profile().mu(), 0.01);
  EXPECT_EQ(q2.profile().lipschitz(), 1.0);
  EXPECT_DOUBLE_EQ(q2.profile().condition_number(), 100.0);

  const ObjectiveProblem q3 = make_quadratic({1.0, 1.0}, Point{3.0, -3.0});
  EXPECT_EQ(q3.gradient(Point{0.0, 0.0}), (Point{-3.0, 3.0}));
  EXPECT_EQ(q3.minimizer(), (Point{3.0, -3.0}));
  EXPECT_EQ(q3.minimum_value(), 0.0);
}

TEST(QuadraticTest, Validation) {
  EXPECT_THROW(make_quadratic({}, Point{0.0}), InvalidParameter);
  EXPECT_THROW(make_quadratic({1.0, 2.0}, Point{0.0}), InvalidParameter);
  EXPECT_THROW(make_quadratic({-1.0}, Point{0.0}), InvalidParameter);
}

TEST(QuadraticTest, GradientMatchesValue) {
  const ObjectiveProblem q = make_quadratic({0.1, 0.5, 1.0}, Point{0.5, -1.0, 0.25});
  const Point x{1.0, 2.0, -3.0};
  const double h = 1e-6;
  const Point g = q.gradient(x);
  for (std::size_t i = 0; i < 3; ++i) {
    Point xp = x, xm = x;
    xp[i] += h;
    xm[i] -= h;
    EXPECT_NEAR(g[i], (q.value(xp) - q.value(xm)) / (2 * h), 1e-6);
  }
}

}  // namespace
}  // namespace shangpp
