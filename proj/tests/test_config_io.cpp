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

#include <doctest.h>

#include <charconv>
#include <random>
#include <sstream>

#include "fracboost/config.hpp"
#include "fracboost/io.hpp"

using namespace fracboost;
using io::json;

TEST_CASE("defaults describe the 5 V to 12 V converter experiment") {
  const RunConfig c = parse_config(json::object());
  const ConverterParams& p = c.problem.converter;
  CHECK(p.r_load == 25.0);
  CHECK(p.inductance == 250e-6);
  CHECK(p.r_l == 0.075);
  CHECK(p.capacitance == 1056e-6);
  CHECK(p.r_c == 0.0375);
  CHECK(p.v_g == 5.0);
  CHECK(c.problem.scenario.v_ref == 12.0);
  CHECK(c.problem.scenario.horizon == 0.05);
  CHECK(c.problem.scenario.dt == 0.5e-6);
  CHECK(c.problem.f_sw == 10e3);
  CHECK(c.abc.colony_size == 10);
  CHECK(c.abc.max_iterations == 20);
  CHECK(c.problem.penalty == 1e6);
  CHECK(c.disturbance.time == 0.15);
  CHECK(c.disturbance.relative_step == 0.10);
  CHECK(c.disturbance.horizon == 0.3);
  CHECK_FALSE(c.params.has_value());
}

TEST_CASE("sections override defaults") {
  const json j = json::parse(R"({
    "converter": {"v_g": 6.0},
    "scenario": {"horizon": 0.02},
    "abc": {"colony_size": 6, "bounds": {"kp": [0.5, 3.0]}},
    "controller": {"kind": "pid", "kp": 1.0, "ti": 0.002, "td": 0.001},
    "seed": 42
  })");
  const RunConfig c = parse_config(j);
  CHECK(c.problem.converter.v_g == 6.0);
  CHECK(c.problem.scenario.horizon == 0.02);
  CHECK(c.abc.colony_size == 6);
  CHECK(c.problem.box.kp.lo == 0.5);
  CHECK(c.kind == ControllerKind::Pid);
  REQUIRE(c.params.has_value());
  CHECK(c.params->ti == 0.002);
  CHECK(c.seed == 42);
  CHECK(c.abc.seed == 42);
}

TEST_CASE("round trip through JSON") {
  RunConfig c = parse_config(json::parse(R"({"controller": {"kp": 2, "ti": 0.001, "td": 0.0001,
                                              "lambda": 0.8, "mu": 0.6}, "seed": 9})"));
  const json once = to_json(c);
  const json twice = to_json(parse_config(once));
  CHECK(once.dump() == twice.dump());
}

TEST_CASE("malformed configurations") {
  auto bad = [](const char* text) { return parse_config(json::parse(text)); };
  CHECK_THROWS_AS(bad(R"({"bogus": 1})"), ConfigError);
  CHECK_THROWS_AS(bad(R"({"converter": {"R": 25}})"), ConfigError);
  CHECK_THROWS_AS(bad(R"({"converter": {"r_load": "25"}})"), ConfigError);
  CHECK_THROWS_AS(bad(R"({"converter": {"r_load": -1}})"), ConfigError);
  CHECK_THROWS_AS(bad(R"({"abc": {"colony_size": 1.5}})"), ConfigError);
  CHECK_THROWS_AS(bad(R"({"abc": {"bounds": {"kp": [3, 1]}}})"), ConfigError);
  CHECK_THROWS_AS(bad(R"({"scenario": {"dt": 3e-7}})"), ConfigError);
  CHECK_THROWS_AS(bad(R"({"disturbance": {"time": 0.4}})"), ConfigError);
  CHECK_THROWS_AS(bad(R"({"controller": {"kind": "pi"}})"), ConfigError);
  CHECK_THROWS_AS(bad(R"({"controller": {"kp": 1}})"), ConfigError);
  CHECK_THROWS_AS(bad(R"({"controller": {"kind": "pid", "kp": 1, "ti": 1, "td": 0, "mu": 0.5}})"),
                  ConfigError);
  CHECK_THROWS_AS(bad(R"({"seed": -3})"), ConfigError);
  CHECK_THROWS_AS(bad(R"([1, 2])"), ConfigError);
  CHECK_THROWS_AS(load_config("/nonexistent/config.json"), ConfigError);
}

TEST_CASE("disturbance scenario") {
  const RunConfig c = parse_config(json::object());
  const Scenario s = c.disturbance_scenario();
  CHECK(s.horizon == 0.3);
  REQUIRE(s.disturbance.has_value());
  CHECK(s.disturbance->time == 0.15);
  CHECK(s.disturbance->relative_step == 0.10);
  CHECK_FALSE(c.problem.scenario.disturbance.has_value());
}

TEST_CASE("numbers are written in shortest round-trip form") {
  CHECK(io::format_number(0.1) == "0.1");
  CHECK(io::format_number(12.0) == "12");
  CHECK(io::format_number(-2.5e-7) == "-2.5e-07");
  CHECK(io::format_number(INFINITY) == "inf");
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> d(-1e3, 1e3);
  for (int k = 0; k < 1000; ++k) {
    const double v = d(rng) * std::pow(10.0, static_cast<int>(rng() % 20) - 10);
    const std::string s = io::format_number(v);
    double back = 0.0;
    std::from_chars(s.data(), s.data() + s.size(), back);
    CHECK(back == v);
  }
}

TEST_CASE("trace and history CSV layout") {
  Trace tr;
  tr.time = {0.0, 5e-7};
  tr.v_out = {0.0, 0.25};
  tr.v_filtered = {0.0, 0.125};
  tr.i_l = {0.0, 0.01};
  tr.duty = {0.9, 0.9};
  tr.switch_state = {1, 1};
  std::ostringstream os;
  io::write_trace_csv(os, tr);
  CHECK(os.str() == "time_s,v_out_V,i_l_A,duty,switch_state\n0,0,0,0.9,1\n5e-07,0.25,0.01,0.9,1\n");

  const std::vector<IterationRecord> h{{0, 2.0, 3.5, 10}, {1, 1.5, 2.0, 30}};
  std::ostringstream hs;
  io::write_history_csv(hs, h);
  CHECK(hs.str() == "iteration,best_cost,mean_cost\n0,2,3.5\n1,1.5,2\n");
}

TEST_CASE("summary marks unsettled and unstable runs") {
  SimResult r;
  r.stable = false;
  r.blowup_time = 0.002;
  const json j = io::summary_json(r);
  CHECK(j["stable"] == false);
  CHECK(j["settling_time_s"].is_null());
  CHECK(j["blowup_time_s"] == 0.002);
}

TEST_CASE("controller parameter files") {
  const json j = io::params_json(FopidParams{2.0, 1e-3, 5e-4, 0.7, 0.9}, ControllerKind::Fopid);
  const FopidParams p = io::params_from_json(j);
  CHECK(p.kp == 2.0);
  CHECK(p.mu == 0.9);
  CHECK(io::kind_from_json(j) == ControllerKind::Fopid);
  CHECK(io::kind_from_json(json::parse(R"({"kind": "pid"})")) == ControllerKind::Pid);
  CHECK_THROWS_AS(io::params_from_json(json::parse(R"({"kp": 1, "ti": 1})")), std::invalid_argument);
  CHECK_THROWS_AS(io::params_from_json(json::parse(R"({"kp": 1, "ti": 0, "td": 0})")),
                  std::invalid_argument);
  CHECK_THROWS_AS(io::kind_from_json(json::parse(R"({"kind": "pd"})")), std::invalid_argument);
}
