// Copyright 2026 The fracboost Authors
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
#include <span>
#include <stdexcept>
#include <vector>

#include "fracboost/fopid.hpp"
#include "fracboost/simloop.hpp"

namespace fracboost {

/// One tuning or simulation run entering a comparison table.
struct RunOutcome {
  int run_id = 0;
  FopidParams params;
  SimResult result;
};

struct ReportRow {
  int run_id = 0;
  FopidParams params;
  double j_iae = 0.0;
  double overshoot_pct = 0.0;
  std::optional<double> settling_time;
  std::int64_t switch_count = 0;
  bool stable = true;
};

struct ComparisonReport {
  std::vector<ReportRow> rows;  // sorted by run_id
  std::size_t best = 0;         // index into rows
  const ReportRow& best_row() const { return rows.at(best); }
};

/// Thrown by build_report when no run is stable.
class NoStableRunError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Rows sorted by run id; best is the stable row with the smallest J_IAE,
/// ties going to the lowest run id. Unstable runs are listed but never best.
ComparisonReport build_report(std::span<const RunOutcome> runs);

struct DisturbanceMetrics {
  double max_deviation = 0.0;           // V, on the ripple-filtered output
  std::optional<double> recovery_time;  // s after t_dist; empty if never recovered
};

/// Largest |filtered - v_ref| at or after t_dist, and the time from t_dist
/// to the final entry into the +/- band*v_ref tube. Throws
/// std::invalid_argument when the trace ends before t_dist.
DisturbanceMetrics disturbance_metrics(std::span<const double> time,
                                       std::span<const double> filtered, double v_ref,
                                       double t_dist, double band = 0.02);

/// 100 * (1 - fopid / pid).
double switch_reduction_pct(std::int64_t pid_switches, std::int64_t fopid_switches);

}  // namespace fracboost
