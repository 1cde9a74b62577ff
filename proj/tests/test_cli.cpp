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

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include <unistd.h>

#include "cli.hpp"
#include "fracboost/io.hpp"

namespace fs = std::filesystem;
using fracboost::io::json;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = fracboost::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::map<std::string, std::string> tree(const fs::path& root) {
  std::map<std::string, std::string> files;
  for (const auto& e : fs::recursive_directory_iterator(root)) {
    if (e.is_regular_file()) files[fs::relative(e.path(), root).string()] = slurp(e.path());
  }
  return files;
}

class Scratch {
 public:
  Scratch() {
    static int counter = 0;
    dir_ = fs::temp_directory_path() /
           ("fracboost_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  ~Scratch() { fs::remove_all(dir_); }
  fs::path path(const std::string& name) const { return dir_ / name; }
  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(path(name)) << text;
    return path(name).string();
  }

 private:
  fs::path dir_;
};

const char* kSmallConfig = R"({
  "scenario": {"horizon": 0.005, "record_decimation": 20},
  "abc": {"colony_size": 4, "max_iterations": 2}
})";

json read_json(const fs::path& p) { return json::parse(slurp(p)); }

}  // namespace

TEST_CASE("usage errors") {
  CHECK(cli({}).code == 2);
  CHECK(cli({"frobnicate"}).code == 2);
  CHECK(cli({"--help"}).code == 0);
  CHECK(cli({"tune", "--pid", "--fopid"}).code == 2);
}

TEST_CASE("malformed config exits with code 2") {
  Scratch s;
  const auto bad = s.write("bad.json", R"({"converter": {"r_load": "x"}})");
  const Outcome o = cli({"tune", "-c", bad, "-o", s.path("out").string()});
  CHECK(o.code == 2);
  CHECK(o.err.find("converter.r_load") != std::string::npos);
  const auto broken = s.write("broken.json", "{ not json");
  CHECK(cli({"simulate", "-c", broken, "--duty", "0"}).code == 2);
  CHECK(cli({"simulate", "-c", s.path("missing.json").string(), "--duty", "0"}).code == 2);
}

TEST_CASE("tune writes per-run artifacts and a report") {
  Scratch s;
  const auto cfg = s.write("cfg.json", kSmallConfig);
  const fs::path out = s.path("tune");
  const Outcome o = cli({"tune", "-c", cfg, "--fopid", "--runs", "4", "--seed", "11", "-o", out.string()});
  REQUIRE(o.code == 0);
  for (int k = 1; k <= 4; ++k) {
    const fs::path run = out / ("run_" + std::to_string(k));
    CHECK(fs::exists(run / "history.csv"));
    CHECK(fs::exists(run / "trace.csv"));
    const json best = read_json(run / "best_params.json");
    CHECK(best["seed"] == 10 + k);
    CHECK(best["kind"] == "fopid");
    CHECK(best["provenance"]["config"]["seed"] == 11);
  }
  const json report = read_json(out / "report.json");
  CHECK(report["rows"].size() == 4);
  CHECK(slurp(out / "run_1/history.csv").rfind("iteration,best_cost,mean_cost\n", 0) == 0);
}

TEST_CASE("rerunning tune reproduces every byte") {
  Scratch s;
  const auto cfg = s.write("cfg.json", kSmallConfig);
  const fs::path out = s.path("tune");
  REQUIRE(cli({"tune", "-c", cfg, "--pid", "--runs", "2", "--seed", "42", "-o", out.string()}).code == 0);
  const auto first = tree(out);
  fs::remove_all(out);
  REQUIRE(cli({"tune", "-c", cfg, "--pid", "--runs", "2", "--seed", "42", "-o", out.string()}).code == 0);
  CHECK(tree(out) == first);
  fs::remove_all(out);
  REQUIRE(cli({"tune", "-c", cfg, "--pid", "--runs", "2", "--seed", "42", "--serial", "-o",
               out.string()})
              .code == 0);
  CHECK(tree(out) == first);
  fs::remove_all(out);
  REQUIRE(cli({"tune", "-c", cfg, "--pid", "--runs", "1", "--seed", "42", "-o", out.string()}).code == 0);
  CHECK(slurp(out / "run_1/best_params.json") == first.at("run_1/best_params.json"));
}

TEST_CASE("simulate open loop at zero duty") {
  Scratch s;
  const fs::path out = s.path("sim");
  REQUIRE(cli({"simulate", "--duty", "0", "-o", out.string()}).code == 0);
  const json summary = read_json(out / "summary.json");
  CHECK(summary["stable"] == true);
  CHECK(summary["j_iae"].get<double>() == doctest::Approx(0.330766119142).epsilon(1e-6));
  CHECK(summary["switch_count"] == 0);
  CHECK(summary["settling_time_s"].is_null());
  const std::string csv = slurp(out / "trace.csv");
  CHECK(csv.rfind("time_s,v_out_V,i_l_A,duty,switch_state\n", 0) == 0);
  CHECK(fs::exists(out / "trace_v_out.dat"));
}

TEST_CASE("simulate reports unstable gains without failing") {
  Scratch s;
  const auto params = s.write("p.json", R"({"kind": "pid", "kp": 100000, "ti": 0.01, "td": 0})");
  const fs::path out = s.path("sim");
  REQUIRE(cli({"simulate", "-p", params, "-o", out.string()}).code == 0);
  const json summary = read_json(out / "summary.json");
  CHECK(summary["stable"] == false);
  CHECK(summary["blowup_time_s"].is_number());
  CHECK(cli({"simulate", "-o", out.string()}).code == 2);  // no gains anywhere
}

TEST_CASE("disturb") {
  Scratch s;
  const auto params = s.write("p.json", R"({"kind": "pid", "kp": 1.0, "ti": 0.002, "td": 0.001})");
  SUBCASE("disturbance time past the horizon is a config error") {
    const auto cfg = s.write("c.json", R"({"disturbance": {"time": 0.2, "horizon": 0.1}})");
    CHECK(cli({"disturb", "-c", cfg, "-p", params}).code == 2);
  }
  SUBCASE("zero-size step matches the undisturbed run") {
    const auto zero = s.write("z.json", R"({"disturbance": {"time": 0.03, "horizon": 0.06,
                                                            "relative_step": 0.0}})");
    const auto step = s.write("d.json", R"({"disturbance": {"time": 0.03, "horizon": 0.06}})");
    REQUIRE(cli({"disturb", "-c", zero, "-p", params, "-o", s.path("z").string()}).code == 0);
    REQUIRE(cli({"disturb", "-c", step, "-p", params, "-o", s.path("d").string()}).code == 0);
    const json z = read_json(s.path("z/summary.json"))["disturbance"];
    const json d = read_json(s.path("d/summary.json"))["disturbance"];
    CHECK(z["max_deviation_V"].get<double>() < 0.24);
    CHECK(z["recovery_time_s"].get<double>() == 0.0);
    CHECK(d["max_deviation_V"].get<double>() > z["max_deviation_V"].get<double>());
    CHECK(d["recovery_time_s"].is_number());
  }
}

TEST_CASE("bode of a half-order power") {
  Scratch s;
  REQUIRE(cli({"bode", "--nu", "0.5", "-o", s.path("b").string()}).code == 0);
  std::istringstream csv(slurp(s.path("b/bode.csv")));
  std::string line;
  std::getline(csv, line);
  CHECK(line == "omega_rad_s,magnitude_db,phase_deg,ideal_magnitude_db,ideal_phase_deg");
  int mid = 0;
  while (std::getline(csv, line)) {
    double w, mag, ph;
    char c;
    std::istringstream row(line);
    row >> w >> c >> mag >> c >> ph;
    if (w >= 1e1 && w <= 1e4) {
      CHECK(std::abs(ph - 45.0) <= 5.0);
      ++mid;
    }
  }
  CHECK(mid == 31);
  CHECK(read_json(s.path("b/bode.json"))["response"]["nu"] == 0.5);
}

TEST_CASE("bode of s^0 is flat") {
  Scratch s;
  REQUIRE(cli({"bode", "--nu", "0", "--points-per-decade", "2", "-o", s.path("b").string()}).code == 0);
  std::istringstream csv(slurp(s.path("b/bode.csv")));
  std::string line;
  std::getline(csv, line);
  int rows = 0;
  while (std::getline(csv, line)) {
    CHECK(line.find(",0,0,0,0") != std::string::npos);
    ++rows;
  }
  CHECK(rows == 15);
}

TEST_CASE("bode of an integer-order PID follows its asymptotes") {
  Scratch s;
  const auto params = s.write("p.json", R"({"kind": "pid", "kp": 2, "ti": 0.01, "td": 0.001})");
  REQUIRE(cli({"bode", "-p", params, "--omega-min", "0.1", "--omega-max", "1e6", "-o",
               s.path("b").string()})
              .code == 0);
  std::istringstream csv(slurp(s.path("b/bode.csv")));
  std::string line;
  std::getline(csv, line);
  while (std::getline(csv, line)) {
    double w, mag, ph;
    char c;
    std::istringstream row(line);
    row >> w >> c >> mag >> c >> ph;
    if (w <= 1.0) {
      CHECK(mag == doctest::Approx(20.0 * std::log10(2.0 / (0.01 * w))).epsilon(0.01));
      CHECK(ph == doctest::Approx(-90.0).epsilon(0.02));
    }
    if (w >= 1e5) {
      CHECK(mag == doctest::Approx(20.0 * std::log10(2.0 * 0.001 * w)).epsilon(0.01));
      CHECK(ph == doctest::Approx(90.0).epsilon(0.02));
    }
  }
}

TEST_CASE("compare two controllers") {
  Scratch s;
  const auto cfg = s.write("c.json", R"({"scenario": {"horizon": 0.01, "record_decimation": 50},
                                          "disturbance": {"time": 0.01, "horizon": 0.02}})");
  const auto pid = s.write("pid.json", R"({"kind": "pid", "kp": 1.0, "ti": 0.002, "td": 0.001})");
  const auto fopid = s.write("fopid.json",
                             R"({"kind": "fopid", "kp": 1.0, "ti": 0.002, "td": 0.001, "lambda": 0.9, "mu": 0.8})");
  const Outcome o = cli({"compare", "-c", cfg, "--pid", pid, "--fopid", fopid, "-o", s.path("cmp").string()});
  REQUIRE(o.code == 0);
  const json j = read_json(s.path("cmp/comparison.json"));
  CHECK(j["pid"]["startup"]["stable"] == true);
  CHECK(j["fopid"]["controller"]["lambda"] == 0.9);
  CHECK(j["switch_reduction_pct"].is_number());
  CHECK(fs::exists(s.path("cmp/pid_disturb.csv")));
  CHECK(cli({"compare", "--pid", pid}).code == 2);
}
