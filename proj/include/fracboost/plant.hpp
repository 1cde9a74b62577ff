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

namespace fracboost {

/// Boost converter with inductor resistance r_l and capacitor ESR r_c.
struct ConverterParams {
  double r_load = 25.0;          // ohm
  double inductance = 250e-6;    // H
  double r_l = 0.075;            // ohm
  double capacitance = 1056e-6;  // F
  double r_c = 0.0375;           // ohm
  double v_g = 5.0;              // V

  /// Throws std::invalid_argument unless every field is finite and positive.
  /// r_l and r_c may be zero (ideal parts).
  void validate() const;
};

struct ConverterState {
  double i_l = 0.0;  // A
  double v_c = 0.0;  // V
  bool diode_blocking = false;
};

struct StateDerivative {
  double di_l = 0.0;  // A/s
  double dv_c = 0.0;  // V/s
};

/// Voltage across the load. With the switch off the inductor current flows
/// through the ESR branch and lifts the output by R*r_c*i_l/(R + r_c).
double output_voltage(const ConverterState& s, bool switch_on, const ConverterParams& p);

/// True when the diode is reverse biased and the inductor is held at zero
/// current (discontinuous conduction). Conduction resumes as soon as the
/// source exceeds the output again.
bool in_discontinuous_mode(const ConverterState& s, bool switch_on, const ConverterParams& p);

/// State derivatives for a fixed switch position.
StateDerivative derivatives(const ConverterState& s, bool switch_on, const ConverterParams& p);

/// One classical RK4 step with the switch held over the step, followed by the
/// diode clamp (i_l >= 0).
ConverterState step_state(const ConverterState& s, bool switch_on, const ConverterParams& p,
                          double dt);

/// Trailing-edge sawtooth PWM with the duty command latched once per period.
class PwmModulator {
 public:
  explicit PwmModulator(double f_sw = 10e3);

  /// Switch position at time t. The duty (clipped to [0, 1]) is sampled at the
  /// first call inside each carrier period and held for the whole period.
  bool gate(double duty, double t);
  void reset();

  double frequency() const { return f_sw_; }
  double period() const { return 1.0 / f_sw_; }
  double latched_duty() const { return latched_duty_; }

 private:
  double f_sw_;
  std::int64_t period_index_ = -1;
  double latched_duty_ = 0.0;
};

}  // namespace fracboost
