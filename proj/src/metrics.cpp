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

#include "fracboost/metrics.hpp"

#include <algorithm>
#include <cmath>

namespace fracboost {

ComparisonReport build_report(std::span<const RunOutcome> runs) {
  ComparisonReport report;
  report.rows.reserve(runs.size());
  for (const auto& run : runs) {
    const SimResult& r = run.result;
    report.rows.push_back({run.run_id, run.params, r.j_iae, r.overshoot_pct, r.settling_time,
                           r.switch_count, r.stable});
  }
  std::stable_sort(report.rows.begin(), report.rows.end(),
                   [](const ReportRow& a, const ReportRow& b) { return a.run_id < b.run_id; });

  std::optional<std::size_t> best;
  for (std::size_t k = 0; k < report.rows.size(); ++k) {
    const ReportRow& row = report.rows[k];
    if (!row.stable || !std::isfinite(row.j_iae)) continue;
    if (!best || row.j_iae < report.rows[*best].j_iae) best = k;
  }
  if (!best) throw NoStableRunError("comparison report: no stable run to mark as best");
  report.best = *best;
  return report;
}

DisturbanceMetrics disturbance_metrics(std::span<const double> time,
                                       std::span<const double> filtered, double v_ref,
                                       double t_dist, double band) {
  if (time.size() != filtered.size()) {
    throw std::invalid_argument("disturbance_metrics: size mismatch");
  }
  if (time.empty() || time.back() < t_dist) {
    throw std::invalid_argument("disturbance_metrics: trace ends before the disturbance");
  }
  const auto first = static_cast<std::size_t>(
      std::lower_bound(time.begin(), time.end(), t_dist) - time.begin());
  const double tol = band * std::abs(v_ref);

  DisturbanceMetrics m;
  std::optional<std::size_t> last_outside;
  for (std::size_t k = first; k < time.size(); ++k) {
    const double deviation = std::abs(filtered[k] - v_ref);
    m.max_deviation = std::max(m.max_deviation, deviation);
    if (deviation > tol) last_outside = k;
  }
  if (!last_outside) {
    m.recovery_time = 0.0;
  } else if (*last_outside + 1 < time.size()) {
    m.recovery_time = time[*last_outside + 1] - t_dist;
  }
  return m;
}

double switch_reduction_pct(std::int64_t pid_switches, std::int64_t fopid_switches) {
  if (pid_switches <= 0) {
    throw std::invalid_argument("switch_reduction_pct: PID switch count must be positive");
  }
  return 100.0 * (1.0 - static_cast<double>(fopid_switches) / static_cast<double>(pid_switches));
}

}  // namespace fracboost
