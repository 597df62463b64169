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

#include "shangpp/csv.hpp"

#include <ostream>

#include <fmt/format.h>
#include <fmt/ostream.h>

namespace shangpp {

void write_stats_csv(std::ostream& out, const TrajectoryStats& stats) {
  fmt::print(out, "{}\n", kStatsCsvHeader);
  for (const StatsRow& r : stats.rows) {
    fmt::print(out, "{},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{},{}\n", r.k, r.mean_subopt,
               r.std_subopt, r.mean_energy, r.std_energy, r.bound, r.n_runs, r.diverged_runs);
  }
}

void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows) {
  fmt::print(out,
             "# metric: final mean suboptimality f(x)-f* over runs; "
             "delta = (E(sigma)-E(0))/E(0) with hyperparameters held fixed\n");
  fmt::print(out, "{}\n", kSweepCsvHeader);
  for (const SweepRow& r : rows) {
    fmt::print(out, "{},{:.17g},{:.17g},{:.17g},{}\n", r.method, r.sigma, r.final_mean_subopt,
               r.delta, r.divergent ? 1 : 0);
  }
}

}  // namespace shangpp
