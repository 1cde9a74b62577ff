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

#include "fracboost/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <stdexcept>

namespace fracboost::io {

namespace {

json optional_number(const std::optional<double>& v) {
  return v ? json(*v) : json(nullptr);
}

double db(std::complex<double> h) { return 20.0 * std::log10(std::abs(h)); }
double degrees(std::complex<double> h) { return std::arg(h) * 180.0 / std::numbers::pi; }

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void write_trace_csv(std::ostream& os, const Trace& trace) {
  os << "time_s,v_out_V,i_l_A,duty,switch_state\n";
  for (std::size_t k = 0; k < trace.size(); ++k) {
    os << format_number(trace.time[k]) << ',' << format_number(trace.v_out[k]) << ','
       << format_number(trace.i_l[k]) << ',' << format_number(trace.duty[k]) << ','
       << static_cast<int>(trace.switch_state[k]) << '\n';
  }
}

void write_two_column(std::ostream& os, std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("write_two_column: size mismatch");
  for (std::size_t k = 0; k < x.size(); ++k) {
    os << format_number(x[k]) << ' ' << format_number(y[k]) << '\n';
  }
}

void write_history_csv(std::ostream& os, std::span<const IterationRecord> history) {
  os << "iteration,best_cost,mean_cost\n";
  for (const auto& h : history) {
    os << h.iteration << ',' << format_number(h.best_cost) << ',' << format_number(h.mean_cost)
       << '\n';
  }
}

void write_report_csv(std::ostream& os, const ComparisonReport& report) {
  os << "run_id,kp,ti,td,lambda,mu,j_iae,overshoot_pct,settling_time_s,switch_count,stable,best\n";
  for (std::size_t k = 0; k < report.rows.size(); ++k) {
    const ReportRow& r = report.rows[k];
    os << r.run_id << ',' << format_number(r.params.kp) << ',' << format_number(r.params.ti) << ','
       << format_number(r.params.td) << ',' << format_number(r.params.lambda) << ','
       << format_number(r.params.mu) << ',' << format_number(r.j_iae) << ','
       << format_number(r.overshoot_pct) << ','
       << (r.settling_time ? format_number(*r.settling_time) : std::string("")) << ','
       << r.switch_count << ',' << (r.stable ? 1 : 0) << ',' << (k == report.best ? 1 : 0)
       << '\n';
  }
}

json summary_json(const SimResult& result) {
  json j;
  j["stable"] = result.stable;
  j["j_iae"] = result.j_iae;
  j["overshoot_pct"] = result.overshoot_pct;
  j["settling_time_s"] = optional_number(result.settling_time);
  j["switch_count"] = result.switch_count;
  j["blowup_time_s"] = optional_number(result.blowup_time);
  j["final_time_s"] = result.final_time;
  j["metrics_valid"] = result.stable;
  return j;
}

json params_json(const FopidParams& params, ControllerKind kind) {
  json j;
  j["kind"] = std::string(to_string(kind));
  j["kp"] = params.kp;
  j["ti"] = params.ti;
  j["td"] = params.td;
  j["lambda"] = params.lambda;
  j["mu"] = params.mu;
  return j;
}

json report_json(const ComparisonReport& report) {
  json rows = json::array();
  for (std::size_t k = 0; k < report.rows.size(); ++k) {
    const ReportRow& r = report.rows[k];
    json row;
    row["run_id"] = r.run_id;
    row["kp"] = r.params.kp;
    row["ti"] = r.params.ti;
    row["td"] = r.params.td;
    row["lambda"] = r.params.lambda;
    row["mu"] = r.params.mu;
    row["j_iae"] = r.j_iae;
    row["overshoot_pct"] = r.overshoot_pct;
    row["settling_time_s"] = optional_number(r.settling_time);
    row["switch_count"] = r.switch_count;
    row["stable"] = r.stable;
    row["best"] = k == report.best;
    rows.push_back(std::move(row));
  }
  json j;
  j["rows"] = std::move(rows);
  j["best_run_id"] = report.best_row().run_id;
  return j;
}

ControllerKind kind_from_json(const json& j) {
  const std::string kind = j.value("kind", std::string("fopid"));
  if (kind == "pid") return ControllerKind::Pid;
  if (kind == "fopid") return ControllerKind::Fopid;
  throw std::invalid_argument("controller kind must be \"pid\" or \"fopid\", got \"" + kind + "\"");
}

FopidParams params_from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("controller parameters must be a JSON object");
  for (const char* key : {"kp", "ti", "td"}) {
    if (!j.contains(key) || !j.at(key).is_number()) {
      throw std::invalid_argument(std::string("controller parameter \"") + key +
                                  "\" is missing or not a number");
    }
  }
  FopidParams p;
  p.kp = j.at("kp").get<double>();
  p.ti = j.at("ti").get<double>();
  p.td = j.at("td").get<double>();
  p.lambda = j.value("lambda", 1.0);
  p.mu = j.value("mu", 1.0);
  p.validate();
  return p;
}

void write_bode_csv(std::ostream& os, std::span<const BodePoint> points) {
  os << "omega_rad_s,magnitude_db,phase_deg,ideal_magnitude_db,ideal_phase_deg\n";
  for (const auto& p : points) {
    os << format_number(p.omega) << ',' << format_number(db(p.approx)) << ','
       << format_number(degrees(p.approx)) << ',' << format_number(db(p.ideal)) << ','
       << format_number(degrees(p.ideal)) << '\n';
  }
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace fracboost::io
