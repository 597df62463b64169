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

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "shangpp/harness.hpp"

namespace shangpp {

/// Raised for unreadable, malformed or invalid configuration documents.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A parsed run configuration.
///
/// The document is a flat list of `section.key = value` lines; `#` starts a
/// comment. `experiment.problem`, `experiment.sigma` and `experiment.methods`
/// accept bracketed lists (`[0, 10, 50]`) and the experiment grid is their
/// cartesian product. Vector values such as x0 use `;` between coordinates.
struct RunConfig {
  std::vector<ProblemSpec> problems;
  std::vector<double> sigmas;
  std::vector<MethodSpec> methods;
  ExperimentSpec base;
  /// Scalar x0 values are broadcast to the problem dimension.
  std::vector<double> x0{1.0};
  std::optional<std::uint64_t> seed;
  std::optional<std::vector<double>> sweep_sigmas;
  std::filesystem::path output_dir = "results";
  int verbosity = 1;

  /// One spec per (problem, sigma, method), validated.
  std::vector<ExperimentSpec> expand() const;
};

RunConfig parse_config(std::istream& in);
RunConfig load_config(const std::filesystem::path& path);

}  // namespace shangpp
