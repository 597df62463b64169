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

#include <cstddef>
#include <functional>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace shangpp {

/// Raised when a caller breaks a documented precondition (dimension mismatch,
/// schedule/state index mismatch, ...).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Raised for out-of-range hyperparameters or problem parameters.
class InvalidParameter : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A point in R^d. Coordinates are checked to be finite when a Point is
/// built from user data; arithmetic results are not re-checked so that
/// divergence can be detected downstream with is_finite().
class Point {
 public:
  Point() = default;
  explicit Point(std::vector<double> coords);
  Point(std::initializer_list<double> coords);

  static Point zeros(std::size_t dim);
  static Point filled(std::size_t dim, double value);
  /// Wraps coordinates without the finiteness check.
  static Point unchecked(std::vector<double> coords);

  std::size_t dim() const { return coords_.size(); }
  double operator[](std::size_t i) const { return coords_[i]; }
  double& operator[](std::size_t i) { return coords_[i]; }
  std::span<const double> coords() const { return coords_; }
  const std::vector<double>& values() const { return coords_; }

  bool is_finite() const;

  friend bool operator==(const Point&, const Point&) = default;

 private:
  struct NoCheck {};
  Point(std::vector<double> coords, NoCheck) : coords_(std::move(coords)) {}

  std::vector<double> coords_;
};

double dot(const Point& a, const Point& b);
double norm_sq(const Point& a);
double norm(const Point& a);
double distance_sq(const Point& a, const Point& b);
/// a - b
Point subtract(const Point& a, const Point& b);
/// a + s * b
Point axpy(const Point& a, double s, const Point& b);

void require_same_dim(const Point& a, const Point& b, const char* what);

/// Strong-convexity modulus and gradient Lipschitz constant.
class SmoothnessProfile {
 public:
  SmoothnessProfile(double mu, double lipschitz);

  double mu() const { return mu_; }
  double lipschitz() const { return lipschitz_; }
  bool strongly_convex() const { return mu_ > 0.0; }
  /// L / mu, infinite for convex-only problems.
  double condition_number() const;

 private:
  double mu_;
  double lipschitz_;
};

/// A smooth convex objective with its smoothness constants and, when known,
/// the minimizer and minimum value. Immutable after construction.
class ObjectiveProblem {
 public:
  using ValueFn = std::function<double(const Point&)>;
  using GradientFn = std::function<Point(const Point&)>;

  ObjectiveProblem(std::string name, std::size_t dimension,
                   SmoothnessProfile profile, ValueFn value,
                   GradientFn gradient, std::optional<Point> minimizer,
                   std::optional<double> minimum_value);

  const std::string& name() const { return name_; }
  std::size_t dimension() const { return dimension_; }
  const SmoothnessProfile& profile() const { return profile_; }

  double value(const Point& x) const;
  Point gradient(const Point& x) const;

  bool has_minimizer() const { return minimizer_.has_value(); }
  /// Throws ContractViolation when the minimizer is unknown.
  const Point& minimizer() const;
  double minimum_value() const;

  void require_dim(const Point& x, const char* what) const;

 private:
  std::string name_;
  std::size_t dimension_;
  SmoothnessProfile profile_;
  ValueFn value_;
  GradientFn gradient_;
  std::optional<Point> minimizer_;
  std::optional<double> minimum_value_;
};

/// D_f(y, x) = f(y) - f(x) - <grad f(x), y - x>.
double bregman_divergence(const ObjectiveProblem& problem, const Point& y,
                          const Point& x);

/// <grad f(y) - grad f(x), y - z> - [D_f(z, y) + D_f(y, x) - D_f(z, x)].
/// Zero up to rounding for every differentiable f.
double three_point_identity_residual(const ObjectiveProblem& problem,
                                     const Point& x, const Point& y,
                                     const Point& z);

}  // namespace shangpp
