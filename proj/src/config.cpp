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

#include "fracboost/config.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <set>
#include <string_view>
#include <type_traits>

namespace fracboost {

namespace {

using io::json;

// Reads one JSON object, remembering which keys were consumed.
class Section {
 public:
  Section(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError(path_ + ": expected a JSON object");
  }

  void number(std::string_view key, double& out) {
    if (const json* v = find(key)) {
      if (!v->is_number()) throw ConfigError(where(key) + ": expected a number");
      out = v->get<double>();
    }
  }

  template <typename Int>
  void integer(std::string_view key, Int& out) {
    if (const json* v = find(key)) {
      if (!v->is_number_integer()) throw ConfigError(where(key) + ": expected an integer");
      if (v->is_number_unsigned()) {
        out = static_cast<Int>(v->get<std::uint64_t>());
      } else {
        const auto s = v->get<std::int64_t>();
        if (s < 0 && std::is_unsigned_v<Int>) {
          throw ConfigError(where(key) + ": must be non-negative");
        }
        out = static_cast<Int>(s);
      }
    }
  }

  void string(std::string_view key, std::string& out) {
    if (const json* v = find(key)) {
      if (!v->is_string()) throw ConfigError(where(key) + ": expected a string");
      out = v->get<std::string>();
    }
  }

  void bounds(std::string_view key, Bounds& out) {
    if (const json* v = find(key)) {
      if (!v->is_array() || v->size() != 2 || !(*v)[0].is_number() || !(*v)[1].is_number()) {
        throw ConfigError(where(key) + ": expected [lo, hi]");
      }
      out = {(*v)[0].get<double>(), (*v)[1].get<double>()};
    }
  }

  const json* find(std::string_view key) {
    seen_.insert(std::string(key));
    auto it = j_.find(std::string(key));
    return it == j_.end() ? nullptr : &*it;
  }

  std::optional<Section> child(std::string_view key) {
    if (const json* v = find(key)) return Section(*v, where(key));
    return std::nullopt;
  }

  bool has(std::string_view key) const { return j_.contains(std::string(key)); }

  void finish() const {
    for (const auto& item : j_.items()) {
      if (!seen_.count(item.key())) throw ConfigError(where(item.key()) + ": unknown key");
    }
  }

  std::string where(std::string_view key) const {
    return path_.empty() ? std::string(key) : path_ + "." + std::string(key);
  }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

template <typename F>
void checked(std::string_view what, F&& f) {
  try {
    f();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string(what) + ": " + e.what());
  }
}

json bounds_json(const Bounds& b) { return json::array({b.lo, b.hi}); }

}  // namespace

RunConfig::RunConfig() {
  problem.scenario.record_decimation = 10;
}

void RunConfig::validate() const {
  checked("converter", [&] { problem.converter.validate(); });
  checked("ora", [&] { problem.ora.validate(); });
  checked("scenario", [&] { problem.scenario.validate(); });
  checked("controller", [&] { problem.limits.validate(); });
  if (!(problem.f_sw > 0.0) || !std::isfinite(problem.f_sw)) {
    throw ConfigError("modulator.f_sw: must be positive");
  }
  checked("scenario.dt", [&] { steps_per_period(PwmModulator(problem.f_sw), problem.scenario.dt); });
  if (!(problem.differentiator_tau >= 0.0)) {
    throw ConfigError("controller.differentiator_tau: must be >= 0");
  }
  if (!(problem.penalty > 0.0)) throw ConfigError("abc.penalty: must be positive");
  checked("abc", [&] {
    AbcConfig probe = abc;
    probe.bounds = search_bounds(ControllerKind::Fopid, problem.box);
    probe.validate();
  });
  if (params) checked("controller", [&] { params->validate(); });
  if (!(disturbance.horizon > 0.0)) throw ConfigError("disturbance.horizon: must be positive");
  if (!(disturbance.time >= 0.0) || disturbance.time > disturbance.horizon) {
    throw ConfigError("disturbance.time: must lie within [0, disturbance.horizon]");
  }
  if (!std::isfinite(disturbance.relative_step) || disturbance.relative_step <= -1.0) {
    throw ConfigError("disturbance.relative_step: must be finite and > -1");
  }
  checked("disturbance", [&] { disturbance_scenario().validate(); });
  if (output_dir.empty()) throw ConfigError("output_dir: must not be empty");
}

Scenario RunConfig::disturbance_scenario() const {
  Scenario s = problem.scenario;
  s.horizon = disturbance.horizon;
  s.disturbance = Disturbance{disturbance.time, disturbance.relative_step};
  return s;
}

RunConfig parse_config(const json& j) {
  RunConfig cfg;
  TuningProblem& p = cfg.problem;
  Section root(j, "");

  if (auto s = root.child("converter")) {
    s->number("r_load", p.converter.r_load);
    s->number("inductance", p.converter.inductance);
    s->number("r_l", p.converter.r_l);
    s->number("capacitance", p.converter.capacitance);
    s->number("r_c", p.converter.r_c);
    s->number("v_g", p.converter.v_g);
    s->finish();
  }
  if (auto s = root.child("modulator")) {
    s->number("f_sw", p.f_sw);
    s->finish();
  }
  if (auto s = root.child("ora")) {
    s->number("omega_low", p.ora.omega_low);
    s->number("omega_high", p.ora.omega_high);
    s->integer("sections", p.ora.sections);
    s->finish();
  }
  if (auto s = root.child("scenario")) {
    s->number("v_ref", p.scenario.v_ref);
    s->number("horizon", p.scenario.horizon);
    s->number("dt", p.scenario.dt);
    s->integer("record_decimation", p.scenario.record_decimation);
    s->number("break_threshold", p.scenario.break_threshold);
    s->number("settling_band", p.scenario.settling_band);
    s->finish();
  }
  if (auto s = root.child("disturbance")) {
    s->number("time", cfg.disturbance.time);
    s->number("relative_step", cfg.disturbance.relative_step);
    s->number("horizon", cfg.disturbance.horizon);
    s->finish();
  }
  if (auto s = root.child("abc")) {
    s->integer("colony_size", cfg.abc.colony_size);
    s->integer("max_iterations", cfg.abc.max_iterations);
    s->integer("limit", cfg.abc.limit);
    s->integer("max_evaluations", cfg.abc.max_evaluations);
    s->number("penalty", p.penalty);
    if (auto b = s->child("bounds")) {
      b->bounds("kp", p.box.kp);
      b->bounds("ti", p.box.ti);
      b->bounds("td", p.box.td);
      b->bounds("lambda", p.box.lambda);
      b->bounds("mu", p.box.mu);
      b->finish();
    }
    s->finish();
  }
  if (auto s = root.child("controller")) {
    std::string kind = std::string(to_string(cfg.kind));
    s->string("kind", kind);
    if (kind == "pid") {
      cfg.kind = ControllerKind::Pid;
    } else if (kind == "fopid") {
      cfg.kind = ControllerKind::Fopid;
    } else {
      throw ConfigError("controller.kind: expected \"pid\" or \"fopid\"");
    }
    s->number("u_min", p.limits.u_min);
    s->number("u_max", p.limits.u_max);
    s->number("differentiator_tau", p.differentiator_tau);
    const bool any_gain = s->has("kp") || s->has("ti") || s->has("td") || s->has("lambda") ||
                          s->has("mu");
    FopidParams gains;
    s->number("kp", gains.kp);
    s->number("ti", gains.ti);
    s->number("td", gains.td);
    s->number("lambda", gains.lambda);
    s->number("mu", gains.mu);
    if (any_gain) {
      if (!s->has("kp") || !s->has("ti") || !s->has("td")) {
        throw ConfigError("controller: kp, ti and td must be given together");
      }
      if (cfg.kind == ControllerKind::Pid && (gains.lambda != 1.0 || gains.mu != 1.0)) {
        throw ConfigError("controller: a pid controller has lambda = mu = 1");
      }
      cfg.params = gains;
    }
    s->finish();
  }
  root.integer("seed", cfg.seed);
  root.string("output_dir", cfg.output_dir);
  root.finish();

  cfg.abc.seed = cfg.seed;
  cfg.validate();
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  return parse_config(j);
}

json to_json(const RunConfig& cfg) {
  const TuningProblem& p = cfg.problem;
  json j;
  j["converter"] = {{"r_load", p.converter.r_load},
                    {"inductance", p.converter.inductance},
                    {"r_l", p.converter.r_l},
                    {"capacitance", p.converter.capacitance},
                    {"r_c", p.converter.r_c},
                    {"v_g", p.converter.v_g}};
  j["modulator"] = {{"f_sw", p.f_sw}};
  j["ora"] = {{"omega_low", p.ora.omega_low},
              {"omega_high", p.ora.omega_high},
              {"sections", p.ora.sections}};
  j["scenario"] = {{"v_ref", p.scenario.v_ref},
                   {"horizon", p.scenario.horizon},
                   {"dt", p.scenario.dt},
                   {"record_decimation", p.scenario.record_decimation},
                   {"break_threshold", p.scenario.break_threshold},
                   {"settling_band", p.scenario.settling_band}};
  j["disturbance"] = {{"time", cfg.disturbance.time},
                      {"relative_step", cfg.disturbance.relative_step},
                      {"horizon", cfg.disturbance.horizon}};
  j["abc"] = {{"colony_size", cfg.abc.colony_size},
              {"max_iterations", cfg.abc.max_iterations},
              {"limit", cfg.abc.limit},
              {"max_evaluations", cfg.abc.max_evaluations},
              {"penalty", p.penalty},
              {"bounds",
               {{"kp", bounds_json(p.box.kp)},
                {"ti", bounds_json(p.box.ti)},
                {"td", bounds_json(p.box.td)},
                {"lambda", bounds_json(p.box.lambda)},
                {"mu", bounds_json(p.box.mu)}}}};
  json controller = {{"kind", std::string(to_string(cfg.kind))},
                     {"u_min", p.limits.u_min},
                     {"u_max", p.limits.u_max},
                     {"differentiator_tau", p.differentiator_tau}};
  if (cfg.params) {
    controller["kp"] = cfg.params->kp;
    controller["ti"] = cfg.params->ti;
    controller["td"] = cfg.params->td;
    controller["lambda"] = cfg.params->lambda;
    controller["mu"] = cfg.params->mu;
  }
  j["controller"] = std::move(controller);
  j["seed"] = cfg.seed;
  j["output_dir"] = cfg.output_dir;
  return j;
}

}  // namespace fracboost
