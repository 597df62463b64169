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

#include "shangpp/problems.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace shangpp {
namespace {

void require_exponent(int d) {
  if (d < 2) throw InvalidParameter(fmt::format("f_d needs d >= 2, got {}", d));
}

}  // namespace

double fd_value(int d, double x) {
  require_exponent(d);
  const double ax = std::abs(x);
  if (ax < 1.0) return std::pow(ax, d);
  return 1.0 + d * (ax - 1.0);
}

double fd_gradient(int d, double x) {
  require_exponent(d);
  if (x == 0.0) return 0.0;
  const double ax = std::abs(x);
  const double sign = x > 0.0 ? 1.0 : -1.0;
  if (ax < 1.0) return d * sign * std::pow(ax, d - 1);
  return d * sign;
}

ObjectiveProblem make_fd_problem(int d) {
  require_exponent(d);
  const double lipschitz = static_cast<double>(d) * (d - 1);
  return ObjectiveProblem(
      fmt::format("f{}", d), 1, SmoothnessProfile(0.0, lipschitz),
      [d](const Point& x) { return fd_value(d, x[0]); },
      [d](const Point& x) { return Point::unchecked({fd_gradient(d, x[0])}); },
      Point{0.0}, 0.0);
}

ObjectiveProblem make_quadratic(const std::vector<double>& eigenvalues,
                                const Point& center) {
  if (eigenvalues.empty()) throw InvalidParameter("quadratic needs at least one eigenvalue");
  if (eigenvalues.size() != center.dim()) {
    throw InvalidParameter(fmt::format("quadratic: {} eigenvalues but center has dimension {}",
                                       eigenvalues.size(), center.dim()));
  }
  for (double lambda : eigenvalues) {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) {
      throw InvalidParameter(fmt::format("quadratic eigenvalues must be positive, got {}", lambda));
    }
  }
  const auto [lo, hi] = std::minmax_element(eigenvalues.begin(), eigenvalues.end());
  auto value = [eigenvalues, center](const Point& x) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.dim(); ++i) {
      const double d = x[i] - center[i];
      s += eigenvalues[i] * d * d;
    }
    return 0.5 * s;
  };
  auto gradient = [eigenvalues, center](const Point& x) {
    std::vector<double> g(x.dim());
    for (std::size_t i = 0; i < x.dim(); ++i) g[i] = eigenvalues[i] * (x[i] - center[i]);
    return Point::unchecked(std::move(g));
  };
  return ObjectiveProblem(fmt::format("quadratic{}d_kappa{:g}", center.dim(), *hi / *lo),
                          center.dim(), SmoothnessProfile(*lo, *hi), std::move(value),
                          std::move(gradient), center, 0.0);
}

}  // namespace shangpp
