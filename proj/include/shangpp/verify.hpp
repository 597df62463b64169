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
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace shangpp {

struct CheckResult {
  std::string name;
  double measured = 0.0;
  double threshold = 0.0;
  bool pass = false;
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckResult> checks;

  bool passed() const;
  std::size_t failures() const;
  /// Adds a "measured <= threshold" check.
  void check_le(std::string name, double measured, double threshold);
  void print(std::ostream& out, bool failures_only = false) const;
};

struct VerifyOptions {
  std::uint64_t seed = 20260416;
  unsigned jobs = 1;
};

/// lemma1, lemma2, schedules, snag-equivalence, deterministic-rates,
/// stochastic-rates
const std::vector<std::string>& suite_names();

/// Throws InvalidParameter for an unknown suite name.
SuiteReport run_suite(std::string_view name, const VerifyOptions& options = {});

SuiteReport verify_lemma1(const VerifyOptions& options);
SuiteReport verify_lemma2(const VerifyOptions& options);
SuiteReport verify_schedules(const VerifyOptions& options);
SuiteReport verify_snag_equivalence(const VerifyOptions& options);
SuiteReport verify_deterministic_rates(const VerifyOptions& options);
SuiteReport verify_stochastic_rates(const VerifyOptions& options);

/// Pieces of verify_stochastic_rates, exposed for finer-grained reporting.
SuiteReport verify_strongly_convex_shang(const VerifyOptions& options);
SuiteReport verify_strongly_convex_shangpp(const VerifyOptions& options);
SuiteReport verify_convex_rates(const VerifyOptions& options);

}  // namespace shangpp
