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

#include "shangpp/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

namespace shangpp {

Point::Point(std::vector<double> coords) : coords_(std::move(coords)) {
  if (coords_.empty()) {
    throw InvalidParameter("Point: dimension must be at least 1");
  }
  if (!is_finite()) {
    throw InvalidParameter("Point: coordinates must be finite");
  }
}

Point::Point(std::initializer_list<double> coords)
    : Point(std::vector<double>(coords)) {}

Point Point::zeros(std::size_t dim) { return filled(dim, 0.0); }

Point Point::filled(std::size_t dim, double value) {
  return Point(std::vector<double>(dim, value));
}

Point Point::unchecked(std::vector<double> coords) {
  return Point(std::move(coords), NoCheck{});
}

bool Point::is_finite() const {
  return std::all_of(coords_.begin(), coords_.end(),
                     [](double c) { return std::isfinite(c); });
}

void require_same_dim(const Point& a, const Point& b, const char* what) {
  if (a.dim() != b.dim()) {
    throw ContractViolation(
        fmt::format("{}: dimension mismatch ({} vs {})", what, a.dim(), b.dim()));
  }
}

double dot(const Point& a, const Point& b) {
  require_same_dim(a, b, "dot");
  double s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) s += a[i] * b[i];
  return s;
}

double norm_sq(const Point& a) { return dot(a, a); }

double norm(const Point& a) { return std::sqrt(norm_sq(a)); }

double distance_sq(const Point& a, const Point& b) {
  require_same_dim(a, b, "distance_sq");
  double s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

Point subtract(const Point& a, const Point& b) {
  require_same_dim(a, b, "subtract");
  std::vector<double> out(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) out[i] = a[i] - b[i];
  return Point::unchecked(std::move(out));
}

Point axpy(const Point& a, double s, const Point& b) {
  require_same_dim(a, b, "axpy");
  std::vector<double> out(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) out[i] = a[i] + s * b[i];
  return Point::unchecked(std::move(out));
}

SmoothnessProfile::SmoothnessProfile(double mu, double lipschitz)
    : mu_(mu), lipschitz_(lipschitz) {
  if (!(lipschitz > 0.0) || !std::isfinite(lipschitz)) {
    throw InvalidParameter(fmt::format("L must be positive and finite, got {}", lipschitz));
  }
  if (!(mu >= 0.0) || mu > lipschitz) {
    throw InvalidParameter(fmt::format("mu must satisfy 0 <= mu <= L, got mu={} L={}", mu, lipschitz));
  }
}

double SmoothnessProfile::condition_number() const {
  if (mu_ == 0.0) return std::numeric_limits<double>::infinity();
  return lipschitz_ / mu_;
}

ObjectiveProblem::ObjectiveProblem(std::string name, std::size_t dimension,
                                   SmoothnessProfile profile, ValueFn value,
                                   GradientFn gradient,
                                   std::optional<Point> minimizer,
                                   std::optional<double> minimum_value)
    : name_(std::move(name)),
      dimension_(dimension),
      profile_(profile),
      value_(std::move(value)),
      gradient_(std::move(gradient)),
      minimizer_(std::move(minimizer)),
      minimum_value_(minimum_value) {
  if (dimension_ == 0) throw InvalidParameter("problem dimension must be >= 1");
  if (!value_ || !gradient_) throw InvalidParameter("problem needs value and gradient");
  if (minimizer_.has_value() != minimum_value_.has_value()) {
    throw InvalidParameter("minimizer and minimum value must be given together");
  }
  if (minimizer_ && minimizer_->dim() != dimension_) {
    throw InvalidParameter("minimizer dimension does not match problem");
  }
}

void ObjectiveProblem::require_dim(const Point& x, const char* what) const {
  if (x.dim() != dimension_) {
    throw ContractViolation(fmt::format("{}: point has dimension {}, problem '{}' has {}",
                                        what, x.dim(), name_, dimension_));
  }
}

double ObjectiveProblem::value(const Point& x) const {
  require_dim(x, "value");
  return value_(x);
}

Point ObjectiveProblem::gradient(const Point& x) const {
  require_dim(x, "gradient");
  return gradient_(x);
}

const Point& ObjectiveProblem::minimizer() const {
  if (!minimizer_) {
    throw ContractViolation(fmt::format("problem '{}' has no known minimizer", name_));
  }
  return *minimizer_;
}

double ObjectiveProblem::minimum_value() const {
  if (!minimum_value_) {
    throw ContractViolation(fmt::format("problem '{}' has no known minimum value", name_));
  }
  return *minimum_value_;
}

double bregman_divergence(const ObjectiveProblem& problem, const Point& y,
                          const Point& x) {
  problem.require_dim(y, "bregman_divergence");
  problem.require_dim(x, "bregman_divergence");
  return problem.value(y) - problem.value(x) -
         dot(problem.gradient(x), subtract(y, x));
}

double three_point_identity_residual(const ObjectiveProblem& problem,
                                     const Point& x, const Point& y,
                                     const Point& z) {
  problem.require_dim(x, "three_point_identity_residual");
  problem.require_dim(y, "three_point_identity_residual");
  problem.require_dim(z, "three_point_identity_residual");
  const double lhs =
      dot(subtract(problem.gradient(y), problem.gradient(x)), subtract(y, z));
  const double rhs = bregman_divergence(problem, z, y) +
                     bregman_divergence(problem, y, x) -
                     bregman_divergence(problem, z, x);
  return lhs - rhs;
}

}  // namespace shangpp
