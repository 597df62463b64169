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

#include "shangpp/noise.hpp"

#include <cmath>

#include <fmt/format.h>

#include "shangpp/stats.hpp"

namespace shangpp {
namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

constexpr long kMinMomentSamples = 2;

}  // namespace

void MnsOracleConfig::validate() const {
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
    throw InvalidParameter(fmt::format("sigma must be finite and >= 0, got {}", sigma));
  }
  if (averaging_count < 1) {
    throw InvalidParameter(fmt::format("averaging count K must be >= 1, got {}", averaging_count));
  }
}

NoiseStream::NoiseStream(std::uint64_t seed, std::uint64_t run_index)
    : key_(mix64(mix64(seed + kGolden) ^ (run_index * kGolden + 0x632BE59BD9B4E019ULL))) {}

double NoiseStream::next_uniform() {
  const std::uint64_t bits = mix64(key_ + (++counter_) * kGolden);
  // 53 random mantissa bits, shifted by half an ulp so 0 is never returned.
  return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

double NoiseStream::next_gaussian() {
  if (spare_) {
    const double z = *spare_;
    spare_.reset();
    return z;
  }
  double u, v, s;
  do {
    u = 2.0 * next_uniform() - 1.0;
    v = 2.0 * next_uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double factor = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v * factor;
  return u * factor;
}

Point sample_noisy_gradient(const MnsOracleConfig& config, NoiseStream& stream,
                            const Point& true_gradient) {
  if (config.sigma == 0.0) return true_gradient;
  const std::size_t d = true_gradient.dim();
  const int k_draws = config.averaging_count;
  std::vector<double> g(d, 0.0);
  for (int j = 0; j < k_draws; ++j) {
    if (config.shape == NoiseShape::ScalarFactor) {
      const double factor = 1.0 + config.sigma * stream.next_gaussian();
      for (std::size_t i = 0; i < d; ++i) g[i] += factor * true_gradient[i];
    } else {
      for (std::size_t i = 0; i < d; ++i) {
        g[i] += (1.0 + config.sigma * stream.next_gaussian()) * true_gradient[i];
      }
    }
  }
  if (k_draws > 1) {
    for (double& gi : g) gi /= static_cast<double>(k_draws);
  }
  return Point::unchecked(std::move(g));
}

MnsOracle::MnsOracle(MnsOracleConfig config, std::uint64_t run_index)
    : config_(config), stream_(config.seed, run_index) {
  config_.validate();
}

OracleMoments estimate_oracle_moments(const MnsOracleConfig& config, NoiseStream& stream,
                                      const Point& true_gradient, long n_samples) {
  config.validate();
  if (n_samples < kMinMomentSamples) {
    throw InvalidParameter(fmt::format("need at least {} samples", kMinMomentSamples));
  }
  const double grad_sq = norm_sq(true_gradient);
  std::vector<RunningStats> comp(true_gradient.dim());
  RunningStats inner, second, ratio;
  for (long n = 0; n < n_samples; ++n) {
    const Point g = sample_noisy_gradient(config, stream, true_gradient);
    for (std::size_t i = 0; i < g.dim(); ++i) comp[i].push(g[i]);
    inner.push(dot(g, true_gradient));
    second.push(norm_sq(g));
    if (grad_sq > 0.0) ratio.push(distance_sq(g, true_gradient) / grad_sq);
  }
  OracleMoments out;
  for (const auto& c : comp) out.component_mean.push_back({c.mean(), c.standard_error()});
  out.inner_product = {inner.mean(), inner.standard_error()};
  out.second_moment = {second.mean(), second.standard_error()};
  if (grad_sq > 0.0) out.mns_ratio = {ratio.mean(), ratio.standard_error()};
  return out;
}

Estimate empirical_mns_constant(const MnsOracleConfig& config, NoiseStream& stream,
                                const Point& true_gradient, long n_samples) {
  if (!(norm_sq(true_gradient) > 0.0)) {
    throw InvalidParameter("MNS ratio undefined at a zero gradient");
  }
  return estimate_oracle_moments(config, stream, true_gradient, n_samples).mns_ratio;
}

}  // namespace shangpp
