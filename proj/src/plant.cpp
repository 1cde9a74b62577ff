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

#include "fracboost/plant.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fracboost {

namespace {

// Phase tolerance when snapping t*f_sw onto a period boundary.
constexpr double kPhaseEpsilon = 1e-9;

StateDerivative continuous_mode(double i_l, double v_c, bool switch_on,
                                const ConverterParams& p) {
  const double q = switch_on ? 0.0 : 1.0;
  const double r = p.r_load;
  const double v_out = (r * v_c + r * p.r_c * q * i_l) / (r + p.r_c);
  return {(p.v_g - p.r_l * i_l - q * v_out) / p.inductance,
          (q * i_l - v_out / r) / p.capacitance};
}

StateDerivative discontinuous_mode(double v_c, const ConverterParams& p) {
  return {0.0, -v_c / ((p.r_load + p.r_c) * p.capacitance)};
}

}  // namespace

void ConverterParams::validate() const {
  auto positive = [](double v) { return v > 0.0 && std::isfinite(v); };
  auto non_negative = [](double v) { return v >= 0.0 && std::isfinite(v); };
  if (!positive(r_load) || !positive(inductance) || !positive(capacitance) ||
      !positive(v_g) || !non_negative(r_l) || !non_negative(r_c)) {
    throw std::invalid_argument(
        "converter: R, L, C, v_g must be positive and r_l, r_c non-negative");
  }
}

double output_voltage(const ConverterState& s, bool switch_on, const ConverterParams& p) {
  const double q = (switch_on || s.diode_blocking) ? 0.0 : 1.0;
  return (p.r_load * s.v_c + p.r_load * p.r_c * q * s.i_l) / (p.r_load + p.r_c);
}

bool in_discontinuous_mode(const ConverterState& s, bool switch_on, const ConverterParams& p) {
  return s.diode_blocking && !switch_on && output_voltage(s, switch_on, p) >= p.v_g;
}

StateDerivative derivatives(const ConverterState& s, bool switch_on, const ConverterParams& p) {
  if (in_discontinuous_mode(s, switch_on, p)) return discontinuous_mode(s.v_c, p);
  return continuous_mode(s.i_l, s.v_c, switch_on, p);
}

ConverterState step_state(const ConverterState& s, bool switch_on, const ConverterParams& p,
                          double dt) {
  if (in_discontinuous_mode(s, switch_on, p)) {
    // Linear decay; the RK4 form keeps the stepping uniform with the other mode.
    const double k1 = discontinuous_mode(s.v_c, p).dv_c;
    const double k2 = discontinuous_mode(s.v_c + 0.5 * dt * k1, p).dv_c;
    const double k3 = discontinuous_mode(s.v_c + 0.5 * dt * k2, p).dv_c;
    const double k4 = discontinuous_mode(s.v_c + dt * k3, p).dv_c;
    return {0.0, s.v_c + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4), true};
  }

  const StateDerivative k1 = continuous_mode(s.i_l, s.v_c, switch_on, p);
  const StateDerivative k2 =
      continuous_mode(s.i_l + 0.5 * dt * k1.di_l, s.v_c + 0.5 * dt * k1.dv_c, switch_on, p);
  const StateDerivative k3 =
      continuous_mode(s.i_l + 0.5 * dt * k2.di_l, s.v_c + 0.5 * dt * k2.dv_c, switch_on, p);
  const StateDerivative k4 =
      continuous_mode(s.i_l + dt * k3.di_l, s.v_c + dt * k3.dv_c, switch_on, p);

  ConverterState next;
  next.i_l = s.i_l + dt / 6.0 * (k1.di_l + 2.0 * k2.di_l + 2.0 * k3.di_l + k4.di_l);
  next.v_c = s.v_c + dt / 6.0 * (k1.dv_c + 2.0 * k2.dv_c + 2.0 * k3.dv_c + k4.dv_c);
  next.diode_blocking = false;
  if (next.i_l < 0.0) {
    next.i_l = 0.0;
    next.diode_blocking = !switch_on;
  }
  return next;
}

PwmModulator::PwmModulator(double f_sw) : f_sw_(f_sw) {
  if (!(f_sw > 0.0) || !std::isfinite(f_sw)) {
    throw std::invalid_argument("PWM carrier frequency must be positive");
  }
}

bool PwmModulator::gate(double duty, double t) {
  const double cycles = t * f_sw_;
  const double index = std::floor(cycles + kPhaseEpsilon);
  const double phase = std::max(0.0, cycles - index);
  const auto period_index = static_cast<std::int64_t>(index);
  if (period_index != period_index_) {
    period_index_ = period_index;
    latched_duty_ = std::clamp(duty, 0.0, 1.0);
  }
  return phase + kPhaseEpsilon < latched_duty_;
}

void PwmModulator::reset() {
  period_index_ = -1;
  latched_duty_ = 0.0;
}

}  // namespace fracboost
