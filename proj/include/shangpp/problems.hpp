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

#include <vector>

#include "shangpp/core.hpp"

namespace shangpp {

/// The piecewise benchmark family on R:
///   |x|^d            for |x| < 1
///   1 + d (|x| - 1)  otherwise
/// Convex and L-smooth with L = d (d - 1), mu = 0, minimizer 0.
double fd_value(int d, double x);
double fd_gradient(int d, double x);

/// One-dimensional ObjectiveProblem wrapping fd_value / fd_gradient.
ObjectiveProblem make_fd_problem(int d);

/// f(x) = 1/2 sum_i lambda_i (x_i - c_i)^2 with mu = min lambda, L = max lambda.
ObjectiveProblem make_quadratic(const std::vector<double>& eigenvalues,
                                const Point& center);

}  // namespace shangpp
