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
#include <numeric>
#include <random>

#include "fracboost/plant.hpp"
#include "fracboost/simloop.hpp"

using namespace fracboost;

namespace {

// Mean of v_out over the last `periods` carrier periods of an open-loop run.
double settled_average(const ConverterParams& p, double duty, double horizon, int periods) {
  Scenario s;
  s.horizon = horizon;
  const SimResult r = simulate_law(ConstantDuty{duty}, p, PwmModulator(10e3), s);
  const std::size_t n = static_cast<std::size_t>(periods) * 200;
  REQUIRE(r.trace.size() > n);
  const auto begin = r.trace.v_out.end() - static_cast<std::ptrdiff_t>(n);
  return std::accumulate(begin, r.trace.v_out.end(), 0.0) / static_cast<double>(n);
}

}  // namespace

TEST_CASE("output voltage with the switch on") {
  const ConverterParams p;
  // capacitor feeds R through r_c: 25 * 12 / 25.0375
  CHECK(output_voltage({0.0, 12.0, false}, true, p) == doctest::Approx(11.982026960).epsilon(1e-9));
}

TEST_CASE("output voltage with the switch off includes the ESR drop") {
  const ConverterParams p;
  const double expected = 25.0 * (12.0 + 0.0375 * 2.0) / 25.0375;
  CHECK(output_voltage({2.0, 12.0, false}, false, p) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("state derivatives") {
  const ConverterParams p;
  SUBCASE("inductor charging from rest") {
    const StateDerivative d = derivatives({0.0, 0.0, false}, true, p);
    CHECK(d.di_l == doctest::Approx(20000.0).epsilon(1e-12));
    CHECK(d.dv_c == 0.0);
  }
  SUBCASE("switch off, conducting") {
    const ConverterState s{1.5, 11.0, false};
    const double vo = 25.0 * (11.0 + 0.0375 * 1.5) / 25.0375;
    const StateDerivative d = derivatives(s, false, p);
    CHECK(d.di_l == doctest::Approx((5.0 - 0.075 * 1.5 - vo) / 250e-6).epsilon(1e-12));
    CHECK(d.dv_c == doctest::Approx((25.0 * 1.5 - 11.0) / (25.0375 * 1056e-6)).epsilon(1e-12));
  }
  SUBCASE("switch on discharges the capacitor into the load") {
    const StateDerivative d = derivatives({1.0, 10.0, false}, true, p);
    CHECK(d.di_l == doctest::Approx((5.0 - 0.075) / 250e-6).epsilon(1e-12));
    CHECK(d.dv_c == doctest::Approx(-10.0 / (25.0375 * 1056e-6)).epsilon(1e-12));
  }
}

TEST_CASE("RK4 step matches the exact solution of the switch-on inductor branch") {
  // switch on decouples L and C: i(t) = v_g/r_l (1 - exp(-r_l t / L)) from rest
  const ConverterParams p;
  ConverterState s;
  const double dt = 0.5e-6;
  for (int k = 0; k < 2000; ++k) s = step_state(s, true, p, dt);
  const double t = 2000 * dt;
  const double exact = 5.0 / 0.075 * (1.0 - std::exp(-0.075 * t / 250e-6));
  CHECK(s.i_l == doctest::Approx(exact).epsilon(1e-10));
  CHECK(s.v_c == 0.0);
}

TEST_CASE("stored energy decays without a source") {
  ConverterParams p;
  p.v_g = 0.0;
  ConverterState s{3.0, 10.0, false};
  double energy = 0.5 * p.inductance * s.i_l * s.i_l + 0.5 * p.capacitance * s.v_c * s.v_c;
  for (int k = 0; k < 20000; ++k) {
    s = step_state(s, (k / 50) % 2 == 0, p, 0.5e-6);
    const double e = 0.5 * p.inductance * s.i_l * s.i_l + 0.5 * p.capacitance * s.v_c * s.v_c;
    REQUIRE(e <= energy * (1.0 + 1e-12));
    energy = e;
  }
}

TEST_CASE("diode clamp enters and leaves discontinuous conduction") {
  const ConverterParams p;
  ConverterState s{1e-4, 12.0, false};
  s = step_state(s, false, p, 0.5e-6);
  CHECK(s.i_l == 0.0);
  CHECK(s.diode_blocking);
  CHECK(in_discontinuous_mode(s, false, p));
  const StateDerivative d = derivatives(s, false, p);
  CHECK(d.di_l == 0.0);
  CHECK(d.dv_c < 0.0);
  // closing the switch always lets current build
  CHECK_FALSE(in_discontinuous_mode(s, true, p));
  CHECK(derivatives(s, true, p).di_l > 0.0);
  // once the output falls under v_g the diode conducts again
  ConverterState low{0.0, 4.0, true};
  CHECK_FALSE(in_discontinuous_mode(low, false, p));
  CHECK(derivatives(low, false, p).di_l > 0.0);
}

TEST_CASE("PWM latches the duty once per period") {
  PwmModulator m(10e3);
  const double dt = 0.5e-6;
  int on = 0;
  for (int k = 0; k < 200; ++k) {
    const double duty = k == 0 ? 0.3 : 0.9;  // later commands ignored this period
    on += m.gate(duty, k * dt) ? 1 : 0;
  }
  CHECK(on == 60);
  CHECK(m.latched_duty() == 0.3);
  CHECK(m.gate(0.9, 200 * dt));
  CHECK(m.latched_duty() == 0.9);
  m.reset();
  CHECK_FALSE(m.gate(0.0, 0.0));
  PwmModulator clip;
  CHECK(clip.gate(2.0, 0.0));
  CHECK(clip.latched_duty() == 1.0);
  CHECK_THROWS_AS(PwmModulator(0.0), std::invalid_argument);
}

TEST_CASE("on-time is an exact number of steps when duty * period is") {
  for (double duty : {0.1, 0.25, 0.55, 0.6, 0.7, 0.95}) {
    PwmModulator m(10e3);
    const double dt = 0.5e-6;
    for (int n = 0; n < 50; ++n) {
      int on = 0;
      for (int k = 0; k < 200; ++k) on += m.gate(duty, (n * 200 + k) * dt) ? 1 : 0;
      CAPTURE(duty);
      CAPTURE(n);
      REQUIRE(on == static_cast<int>(std::lround(duty * 200)));
    }
  }
}

TEST_CASE("at most two transitions per carrier period for any duty sequence") {
  PwmModulator m(10e3);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> d(-0.2, 1.2);
  const double dt = 0.5e-6;
  bool prev = false;
  int transitions = 0;
  for (int k = 0; k < 200 * 300; ++k) {
    if (k % 200 == 0) {
      CHECK(transitions <= 2);
      transitions = 0;
    }
    const bool sw = m.gate(d(rng), k * dt);
    if (k > 0 && sw != prev) ++transitions;
    prev = sw;
  }
}

TEST_CASE("ideal boost settles at v_g / (1 - D)") {
  ConverterParams p;
  p.r_l = 0.0;
  p.r_c = 0.0;
  CHECK(settled_average(p, 0.6, 0.1, 20) == doctest::Approx(12.5).epsilon(0.01));
}

TEST_CASE("lossy boost settles near the averaged-model solution") {
  // V = v_g / [(1 - D) + r_l / (R (1 - D))]
  const ConverterParams p;
  const double d = 0.6;
  const double oracle = p.v_g / ((1.0 - d) + p.r_l / (p.r_load * (1.0 - d)));
  CHECK(oracle == doctest::Approx(12.26993865).epsilon(1e-8));
  CHECK(settled_average(p, d, 0.1, 20) == doctest::Approx(oracle).epsilon(0.02));
}

TEST_CASE("a duty step first pulls the output down") {
  const ConverterParams p;
  ConverterState s;
  PwmModulator m(10e3);
  const double dt = 0.5e-6;
  const int period = 200;
  long step = 0;
  auto run_periods = [&](double duty, int periods, std::vector<double>* averages) {
    for (int n = 0; n < periods; ++n) {
      double sum = 0.0;
      for (int k = 0; k < period; ++k, ++step) {
        const bool sw = m.gate(duty, static_cast<double>(step) * dt);
        sum += output_voltage(s, sw, p);
        s = step_state(s, sw, p, dt);
      }
      if (averages) averages->push_back(sum / period);
    }
  };
  run_periods(0.55, 1000, nullptr);
  std::vector<double> before;
  run_periods(0.55, 1, &before);
  std::vector<double> after;
  run_periods(0.60, 60, &after);
  CHECK(after.front() < before.back());
  CHECK(after.back() > before.back());
}

TEST_CASE("converter validation") {
  ConverterParams p;
  CHECK_NOTHROW(p.validate());
  p.r_load = -1.0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = ConverterParams{};
  p.r_l = 0.0;
  p.r_c = 0.0;
  CHECK_NOTHROW(p.validate());
  p.capacitance = 0.0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}
