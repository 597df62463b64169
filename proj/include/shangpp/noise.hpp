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
#include <optional>
#include <vector>

#include "shangpp/core.hpp"

namespace shangpp {

enum class NoiseShape {
  /// g = (1 + sigma Z) grad f with one scalar Z per draw.
  ScalarFactor,
  /// g_i = (1 + sigma Z_i) (grad f)_i with i.i.d. Z_i.
  Elementwise,
};

/// Multiplicative-noise oracle settings. Averaging K independent draws
/// divides the effective MNS constant by K.
struct MnsOracleConfig {
  double sigma = 0.0;
  NoiseShape shape = NoiseShape::Elementwise;
  int averaging_count = 1;
  std::uint64_t seed = 0;

  void validate() const;
  double effective_mns_constant() const {
    return sigma * sigma / static_cast<double>(averaging_count);
  }
};

/// Counter-based pseudorandom stream keyed by (seed, run_index). The n-th
/// uniform is a pure function of (key, n), so a stream never depends on
/// which thread runs it or on any other stream.
class NoiseStream {
 public:
  NoiseStream(std::uint64_t seed, std::uint64_t run_index);

  /// Uniform on (0, 1).
  double next_uniform();
  /// Standard normal (Marsaglia polar method).
  double next_gaussian();

  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  std::optional<double> spare_;
};

/// One draw of the stochastic gradient for the given true gradient.
/// sigma = 0 returns the exact gradient and consumes no randomness.
Point sample_noisy_gradient(const MnsOracleConfig& config, NoiseStream& stream,
                            const Point& true_gradient);

/// Config plus private stream: the object each optimizer step consumes.
class MnsOracle {
 public:
  MnsOracle(MnsOracleConfig config, std::uint64_t run_index);

  Point sample(const Point& true_gradient) {
    ++draws_;
    return sample_noisy_gradient(config_, stream_, true_gradient);
  }

  const MnsOracleConfig& config() const { return config_; }
  NoiseStream& stream() { return stream_; }
  std::uint64_t draws() const { return draws_; }

 private:
  MnsOracleConfig config_;
  NoiseStream stream_;
  std::uint64_t draws_ = 0;
};

/// Sample mean with its standard error.
struct Estimate {
  double mean = 0.0;
  double standard_error = 0.0;
};

/// (mean of ||g - grad f||^2) / ||grad f||^2 over n_samples draws.
Estimate empirical_mns_constant(const MnsOracleConfig& config, NoiseStream& stream,
                                const Point& true_gradient, long n_samples);

/// Monte-Carlo moments of the oracle at a fixed gradient: per-coordinate
/// mean of g, <g, grad f>, ||g||^2 and the MNS ratio, each with standard
/// errors, all from the same draws.
struct OracleMoments {
  std::vector<Estimate> component_mean;
  Estimate inner_product;
  Estimate second_moment;
  Estimate mns_ratio;
};

OracleMoments estimate_oracle_moments(const MnsOracleConfig& config, NoiseStream& stream,
                                      const Point& true_gradient, long n_samples);

}  // namespace shangpp
