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

#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "fracboost/config.hpp"
#include "fracboost/io.hpp"
#include "fracboost/metrics.hpp"
#include "fracboost/simloop.hpp"
#include "fracboost/tuning.hpp"

namespace fracboost::cli {

namespace {

namespace fs = std::filesystem;
using io::json;

struct CommonOptions {
  std::string config_path;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
};

struct Gains {
  ControllerKind kind = ControllerKind::Fopid;
  FopidParams params;
};

RunConfig resolve_config(const CommonOptions& opt) {
  RunConfig cfg = opt.config_path.empty() ? parse_config(json::object())
                                          : load_config(opt.config_path);
  if (opt.seed) {
    cfg.seed = *opt.seed;
    cfg.abc.seed = *opt.seed;
  }
  if (!opt.out_dir.empty()) cfg.output_dir = opt.out_dir;
  return cfg;
}

json provenance(const RunConfig& cfg, std::string_view command) {
  json j;
  j["command"] = std::string(command);
  j["seed"] = cfg.seed;
  j["config"] = to_json(cfg);
  return j;
}

void write_json(const fs::path& path, const json& j) { io::write_file(path, j.dump(2) + "\n"); }

void write_trace(const fs::path& dir, const std::string& stem, const Trace& trace) {
  std::ostringstream csv;
  io::write_trace_csv(csv, trace);
  io::write_file(dir / (stem + ".csv"), csv.str());
  std::ostringstream raw;
  io::write_two_column(raw, trace.time, trace.v_out);
  io::write_file(dir / (stem + "_v_out.dat"), raw.str());
  std::ostringstream filtered;
  io::write_two_column(filtered, trace.time, trace.v_filtered);
  io::write_file(dir / (stem + "_v_filtered.dat"), filtered.str());
}

Gains gains_from_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read parameter file " + path.string());
  try {
    const json j = json::parse(in);
    return {io::kind_from_json(j), io::params_from_json(j)};
  } catch (const json::exception& e) {
    throw ConfigError(path.string() + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

Gains resolve_gains(const RunConfig& cfg, const std::string& params_path) {
  if (!params_path.empty()) return gains_from_file(params_path);
  if (cfg.params) return {cfg.kind, *cfg.params};
  throw ConfigError("no controller gains: pass --params or set controller.kp/ti/td in the config");
}

SimResult run_closed_loop(const RunConfig& cfg, const Gains& g, const Scenario& scenario) {
  TuningProblem problem = cfg.problem;
  problem.scenario = scenario;
  Controller controller;
  try {
    controller = make_controller(g.kind, g.params, problem);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("controller: ") + e.what());
  }
  return simulate(controller, problem.converter, PwmModulator(problem.f_sw), scenario);
}

std::string describe(const SimResult& r) {
  std::string s = "J=" + io::format_number(r.j_iae) +
                  " overshoot=" + io::format_number(r.overshoot_pct) + "%" +
                  " settling=" + (r.settling_time ? io::format_number(*r.settling_time) + "s" : "none") +
                  " switches=" + std::to_string(r.switch_count);
  if (!r.stable) s += " UNSTABLE at t=" + io::format_number(r.blowup_time.value_or(r.final_time));
  return s;
}

Scenario recorded(Scenario s) {
  if (s.record_decimation == 0) {
    throw ConfigError("scenario.record_decimation: this command needs a recorded trace (> 0)");
  }
  return s;
}

json disturbance_json(const SimResult& r, const RunConfig& cfg) {
  json j;
  if (!r.stable) {
    j["max_deviation_V"] = nullptr;
    j["recovery_time_s"] = nullptr;
    return j;
  }
  const DisturbanceMetrics m =
      disturbance_metrics(r.trace.time, r.trace.v_filtered, cfg.problem.scenario.v_ref,
                          cfg.disturbance.time, cfg.problem.scenario.settling_band);
  j["max_deviation_V"] = m.max_deviation;
  j["recovery_time_s"] = m.recovery_time ? json(*m.recovery_time) : json(nullptr);
  return j;
}

// ---- tune ----

struct TuneOptions {
  CommonOptions common;
  bool pid = false;
  bool fopid = false;
  int runs = 1;
  bool serial = false;
};

int cmd_tune(const TuneOptions& opt, std::ostream& out, std::ostream& err) {
  const RunConfig cfg = resolve_config(opt.common);
  const ControllerKind kind =
      opt.pid ? ControllerKind::Pid : (opt.fopid ? ControllerKind::Fopid : cfg.kind);
  if (opt.runs < 1) throw ConfigError("--runs must be at least 1");

  const auto n = static_cast<std::size_t>(opt.runs);
  std::vector<TuningResult> results(n);
  std::exception_ptr failure;
  const Execution inner = (n > 1 || opt.serial) ? Execution::Serial : Execution::OpenMP;

#pragma omp parallel for schedule(dynamic, 1) if (n > 1)
  for (std::size_t k = 0; k < n; ++k) {
    try {
      AbcConfig abc = cfg.abc;
      abc.seed = cfg.seed + k;
      results[k] = tune(kind, cfg.problem, abc, inner);
    } catch (...) {
#pragma omp critical(fracboost_cli_tune)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  const fs::path dir = cfg.output_dir;
  std::vector<RunOutcome> outcomes;
  for (std::size_t k = 0; k < n; ++k) {
    const TuningResult& r = results[k];
    const int run_id = static_cast<int>(k) + 1;
    const std::uint64_t seed = cfg.seed + k;
    const fs::path run_dir = dir / ("run_" + std::to_string(run_id));

    std::ostringstream history;
    io::write_history_csv(history, r.search.history);
    io::write_file(run_dir / "history.csv", history.str());

    json best = io::params_json(r.params, kind);
    best["run_id"] = run_id;
    best["seed"] = seed;
    best["best_cost"] = r.search.best.cost;
    best["feasible"] = r.feasible;
    best["provenance"] = provenance(cfg, "tune");
    write_json(run_dir / "best_params.json", best);

    json summary = io::summary_json(r.simulation);
    summary["run_id"] = run_id;
    summary["seed"] = seed;
    summary["evaluations"] = r.search.evaluations;
    summary["provenance"] = provenance(cfg, "tune");
    write_json(run_dir / "summary.json", summary);
    if (cfg.problem.scenario.record_decimation > 0) write_trace(run_dir, "trace", r.simulation.trace);

    out << to_string(kind) << " run " << run_id << " (seed " << seed << "): " << describe(r.simulation)
        << "\n";
    outcomes.push_back({run_id, r.params, r.simulation});
  }

  ComparisonReport report;
  try {
    report = build_report(outcomes);
  } catch (const NoStableRunError& e) {
    err << "fracboost tune: " << e.what() << "\n";
    return kExitUnstable;
  }
  std::ostringstream csv;
  io::write_report_csv(csv, report);
  io::write_file(dir / "report.csv", csv.str());
  json rj = io::report_json(report);
  rj["kind"] = std::string(to_string(kind));
  rj["runs"] = opt.runs;
  rj["provenance"] = provenance(cfg, "tune");
  write_json(dir / "report.json", rj);
  out << "best: run " << report.best_row().run_id << "\n";
  return kExitOk;
}

// ---- simulate / disturb ----

struct SimOptions {
  CommonOptions common;
  std::string params_path;
  std::optional<double> duty;
};

int cmd_simulate(const SimOptions& opt, std::ostream& out) {
  const RunConfig cfg = resolve_config(opt.common);
  const Scenario scenario = cfg.problem.scenario;
  SimResult r;
  json summary;
  if (opt.duty) {
    if (!(*opt.duty >= 0.0 && *opt.duty <= 1.0)) throw ConfigError("--duty must lie in [0, 1]");
    r = simulate_law(ConstantDuty{*opt.duty}, cfg.problem.converter, PwmModulator(cfg.problem.f_sw),
                     scenario);
    summary = io::summary_json(r);
    summary["controller"] = {{"kind", "open_loop"}, {"duty", *opt.duty}};
  } else {
    const Gains g = resolve_gains(cfg, opt.params_path);
    r = run_closed_loop(cfg, g, scenario);
    summary = io::summary_json(r);
    summary["controller"] = io::params_json(g.params, g.kind);
  }
  summary["provenance"] = provenance(cfg, "simulate");
  const fs::path dir = cfg.output_dir;
  write_json(dir / "summary.json", summary);
  if (scenario.record_decimation > 0) write_trace(dir, "trace", r.trace);
  out << "simulate: " << describe(r) << "\n";
  return kExitOk;
}

int cmd_disturb(const SimOptions& opt, std::ostream& out) {
  const RunConfig cfg = resolve_config(opt.common);
  const Gains g = resolve_gains(cfg, opt.params_path);
  const SimResult r = run_closed_loop(cfg, g, recorded(cfg.disturbance_scenario()));

  json summary = io::summary_json(r);
  summary["controller"] = io::params_json(g.params, g.kind);
  summary["disturbance"] = disturbance_json(r, cfg);
  summary["provenance"] = provenance(cfg, "disturb");
  const fs::path dir = cfg.output_dir;
  write_json(dir / "summary.json", summary);
  write_trace(dir, "trace", r.trace);
  out << "disturb: " << describe(r) << "\n";
  return r.stable ? kExitOk : kExitUnstable;
}

// ---- compare ----

struct CompareOptions {
  CommonOptions common;
  std::string pid_path;
  std::string fopid_path;
};

int cmd_compare(const CompareOptions& opt, std::ostream& out) {
  const RunConfig cfg = resolve_config(opt.common);
  const fs::path dir = cfg.output_dir;
  json report;
  std::int64_t switches[2] = {0, 0};
  bool all_stable = true;
  const std::pair<const char*, std::string> entries[] = {{"pid", opt.pid_path},
                                                         {"fopid", opt.fopid_path}};
  for (std::size_t k = 0; k < 2; ++k) {
    const auto& [name, path] = entries[k];
    const Gains g = gains_from_file(path);
    const SimResult startup = run_closed_loop(cfg, g, recorded(cfg.problem.scenario));
    const SimResult disturbed = run_closed_loop(cfg, g, recorded(cfg.disturbance_scenario()));
    write_trace(dir, std::string(name) + "_startup", startup.trace);
    write_trace(dir, std::string(name) + "_disturb", disturbed.trace);

    json entry;
    entry["controller"] = io::params_json(g.params, g.kind);
    entry["startup"] = io::summary_json(startup);
    entry["disturb"] = io::summary_json(disturbed);
    entry["disturb"]["disturbance"] = disturbance_json(disturbed, cfg);
    report[name] = std::move(entry);
    switches[k] = startup.switch_count;
    all_stable = all_stable && startup.stable && disturbed.stable;
    out << name << ": " << describe(startup) << "\n";
  }
  report["switch_reduction_pct"] =
      switches[0] > 0 ? json(switch_reduction_pct(switches[0], switches[1])) : json(nullptr);
  report["provenance"] = provenance(cfg, "compare");
  write_json(dir / "comparison.json", report);
  return all_stable ? kExitOk : kExitUnstable;
}

// ---- bode ----

struct BodeOptions {
  CommonOptions common;
  std::string params_path;
  std::optional<double> nu;
  std::optional<double> omega_min;
  std::optional<double> omega_max;
  int points_per_decade = 10;
};

int cmd_bode(const BodeOptions& opt, std::ostream& out) {
  const RunConfig cfg = resolve_config(opt.common);
  const OraBand& band = cfg.problem.ora;
  const double w0 = opt.omega_min.value_or(band.omega_low);
  const double w1 = opt.omega_max.value_or(band.omega_high);
  if (!(w0 > 0.0) || !(w1 > w0) || !std::isfinite(w1)) {
    throw ConfigError("bode: need 0 < omega-min < omega-max");
  }
  if (opt.points_per_decade < 1) throw ConfigError("bode: --points-per-decade must be >= 1");

  std::function<io::BodePoint(double)> eval;
  json what;
  if (opt.nu) {
    const double nu = *opt.nu;
    if (!std::isfinite(nu)) throw ConfigError("bode: --nu must be finite");
    RationalApprox approx;
    try {
      approx = approximate_power(nu, band);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("bode: ") + e.what());
    }
    eval = [approx, nu](double w) {
      return io::BodePoint{w, freq_response(approx, w), std::pow(std::complex<double>(0.0, w), nu)};
    };
    what["nu"] = nu;
  } else {
    const Gains g = resolve_gains(cfg, opt.params_path);
    eval = [g, band](double w) {
      return io::BodePoint{w, approx_fopid_response(g.params, band, w),
                           ideal_fopid_response(g.params, w)};
    };
    what["controller"] = io::params_json(g.params, g.kind);
  }

  const double decades = std::log10(w1 / w0);
  const auto count = static_cast<int>(std::llround(decades * opt.points_per_decade));
  std::vector<io::BodePoint> points;
  for (int k = 0; k <= count; ++k) {
    const double w = k == count ? w1 : w0 * std::pow(10.0, static_cast<double>(k) / opt.points_per_decade);
    points.push_back(eval(w));
  }

  const fs::path dir = cfg.output_dir;
  std::ostringstream csv;
  io::write_bode_csv(csv, points);
  io::write_file(dir / "bode.csv", csv.str());
  json meta = provenance(cfg, "bode");
  meta["response"] = std::move(what);
  write_json(dir / "bode.json", meta);
  out << "bode: " << points.size() << " points written to " << (dir / "bode.csv").string() << "\n";
  return kExitOk;
}

void add_common(CLI::App* sub, CommonOptions& opt) {
  sub->add_option("-c,--config", opt.config_path, "JSON run configuration (defaults if omitted)");
  sub->add_option("-o,--out", opt.out_dir, "Output directory (overrides output_dir)");
  sub->add_option("--seed", opt.seed, "RNG seed (overrides seed)");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fractional-order PID tuning for a boost converter", "fracboost"};
  app.require_subcommand(1);

  TuneOptions tune_opt;
  SimOptions sim_opt;
  SimOptions dist_opt;
  CompareOptions cmp_opt;
  BodeOptions bode_opt;
  std::function<int()> action;

  auto* tune_cmd = app.add_subcommand("tune", "ABC tuning runs with history and report");
  add_common(tune_cmd, tune_opt.common);
  auto* pid_flag = tune_cmd->add_flag("--pid", tune_opt.pid, "Tune an integer-order PID");
  auto* fopid_flag = tune_cmd->add_flag("--fopid", tune_opt.fopid, "Tune a fractional-order PID");
  pid_flag->excludes(fopid_flag);
  tune_cmd->add_option("--runs", tune_opt.runs, "Number of seeded runs (seed, seed+1, ...)");
  tune_cmd->add_flag("--serial", tune_opt.serial, "Evaluate candidates without OpenMP");
  tune_cmd->callback([&] { action = [&] { return cmd_tune(tune_opt, out, err); }; });

  auto* sim_cmd = app.add_subcommand("simulate", "Closed-loop startup trace and summary");
  add_common(sim_cmd, sim_opt.common);
  auto* params_opt = sim_cmd->add_option("-p,--params", sim_opt.params_path, "Controller gains JSON");
  sim_cmd->add_option("--duty", sim_opt.duty, "Open-loop constant duty instead of a controller")
      ->excludes(params_opt);
  sim_cmd->callback([&] { action = [&] { return cmd_simulate(sim_opt, out); }; });

  auto* dist_cmd = app.add_subcommand("disturb", "Input-voltage step test");
  add_common(dist_cmd, dist_opt.common);
  dist_cmd->add_option("-p,--params", dist_opt.params_path, "Controller gains JSON");
  dist_cmd->callback([&] { action = [&] { return cmd_disturb(dist_opt, out); }; });

  auto* cmp_cmd = app.add_subcommand("compare", "PID versus FOPID startup and disturbance");
  add_common(cmp_cmd, cmp_opt.common);
  cmp_cmd->add_option("--pid", cmp_opt.pid_path, "PID gains JSON")->required();
  cmp_cmd->add_option("--fopid", cmp_opt.fopid_path, "FOPID gains JSON")->required();
  cmp_cmd->callback([&] { action = [&] { return cmd_compare(cmp_opt, out); }; });

  auto* bode_cmd = app.add_subcommand("bode", "Frequency response of s^nu or a controller");
  add_common(bode_cmd, bode_opt.common);
  auto* nu_opt = bode_cmd->add_option("--nu", bode_opt.nu, "Power of s to approximate");
  bode_cmd->add_option("-p,--params", bode_opt.params_path, "Controller gains JSON")->excludes(nu_opt);
  bode_cmd->add_option("--omega-min", bode_opt.omega_min, "rad/s, default ora.omega_low");
  bode_cmd->add_option("--omega-max", bode_opt.omega_max, "rad/s, default ora.omega_high");
  bode_cmd->add_option("--points-per-decade", bode_opt.points_per_decade, "Grid density");
  bode_cmd->callback([&] { action = [&] { return cmd_bode(bode_opt, out); }; });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    return action();
  } catch (const ConfigError& e) {
    err << "fracboost: config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "fracboost: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace fracboost::cli
