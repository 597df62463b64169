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

#include <iosfwd>
#include <span>
#include <string_view>

#include "shangpp/harness.hpp"

namespace shangpp {

inline constexpr std::string_view kStatsCsvHeader =
    "k,mean_subopt,std_subopt,mean_energy,std_energy,bound,n_runs,diverged_runs";
inline constexpr std::string_view kSweepCsvHeader =
    "method,sigma,final_mean_suboptimality,delta,divergent";

/// Doubles are written with 17 significant digits, LF line endings.
void write_stats_csv(std::ostream& out, const TrajectoryStats& stats);
void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows);

}  // namespace shangpp
