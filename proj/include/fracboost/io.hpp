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

#include <filesystem>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "fracboost/abc.hpp"
#include "fracboost/frac_approx.hpp"
#include "fracboost/metrics.hpp"
#include "fracboost/simloop.hpp"
#include "fracboost/tuning.hpp"

namespace fracboost::io {

using json = nlohmann::ordered_json;

/// Shortest decimal string that round-trips to v.
std::string format_number(double v);

/// time_s,v_out_V,i_l_A,duty,switch_state
void write_trace_csv(std::ostream& os, const Trace& trace);

/// Two whitespace-separated columns, gnuplot style.
void write_two_column(std::ostream& os, std::span<const double> x, std::span<const double> y);

/// iteration,best_cost,mean_cost
void write_history_csv(std::ostream& os, std::span<const IterationRecord> history);

/// run_id,kp,ti,td,lambda,mu,j_iae,overshoot_pct,settling_time_s,switch_count,stable,best
void write_report_csv(std::ostream& os, const ComparisonReport& report);

json summary_json(const SimResult& result);
json params_json(const FopidParams& params, ControllerKind kind);
json report_json(const ComparisonReport& report);

/// Parses {"kind": ..., "kp": ..., ...}; lambda and mu default to 1.
FopidParams params_from_json(const json& j);
ControllerKind kind_from_json(const json& j);

/// One row per frequency: omega_rad_s,magnitude_db,phase_deg,ideal_magnitude_db,ideal_phase_deg.
struct BodePoint {
  double omega = 0.0;
  std::complex<double> approx;
  std::complex<double> ideal;
};
void write_bode_csv(std::ostream& os, std::span<const BodePoint> points);

/// Writes text to path, creating parent directories. Throws std::runtime_error on failure.
void write_file(const std::filesystem::path& path, const std::string& text);

}  // namespace fracboost::io
