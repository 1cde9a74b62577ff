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

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "fracboost/fopid.hpp"
#include "fracboost/plant.hpp"

namespace fracboost {

/// Multiplicative step on v_g: v_g -> v_g * (1 + relative_step) for t >= time.
struct Disturbance {
  double time = 0.15;
  double relative_step = 0.10;
};

struct Scenario {
  double v_ref = 12.0;       // V
  double horizon = 0.05;     // s
  double dt = 0.5e-6;        // s, shared by plant and controller
  std::optional<Disturbance> disturbance;
  int record_decimation = 1;  // 0 records no trace
  double break_threshold = 1e6;
  double settling_band = 0.02;

  /// Throws std::invalid_argument on a non-positive horizon/dt, a negative
  /// decimation or a disturbance outside [0, horizon].
  void validate() const;
};

/// Sampled closed-loop signals. v_filtered is the one-PWM-period moving
/// average of v_out.
struct Trace {
  std::vector<double> time;
  std::vector<double> v_out;
  std::vector<double> v_filtered;
  std::vector<double> i_l;
  std::vector<double> duty;
  std::vector<std::uint8_t> switch_state;

  std::size_t size() const { return time.size(); }
};

struct SimResult {
  Trace trace;
  double j_iae = 0.0;                  // V*s
  double overshoot_pct = 0.0;          // %
  std::optional<double> settling_time; // empty: never settled
  std::int64_t switch_count = 0;
  bool stable = true;
  std::optional<double> blowup_time;   // set iff !stable
  double final_time = 0.0;
};

/// Anything that maps an error sample to a duty command.
template <class Law>
concept ControlLaw = requires(Law law, double error) {
  { law.update(error) } -> std::convertible_to<double>;
};

/// Open-loop law holding a fixed duty.
struct ConstantDuty {
  double duty = 0.0;
  double update(double) const { return duty; }
};

// --- trace metrics -----------------------------------------------------------

/// Trapezoidal integral of |v - v_ref| over [0, horizon]. Throws
/// std::invalid_argument when the trace ends before horizon.
double iae(std::span<const double> time, std::span<const double> v, double v_ref,
           double horizon);

/// 100 * max(0, max(filtered) - v_ref) / v_ref.
double overshoot_pct(std::span<const double> filtered, double v_ref);

/// Earliest time after which filtered stays inside v_ref*(1 +/- band).
/// Empty when the last sample is outside the band.
std::optional<double> settling_time(std::span<const double> time,
                                    std::span<const double> filtered, double v_ref,
                                    double band = 0.02);

/// Number of switch transitions between consecutive samples inside [t0, t1].
std::int64_t switch_count(std::span<const double> time,
                          std::span<const std::uint8_t> switch_state, double t0, double t1);

/// Trailing moving average over window samples (shorter at the start).
std::vector<double> ripple_filter(std::span<const double> values, std::size_t window);

// --- simulation --------------------------------------------------------------

/// Number of plant steps per carrier period; throws std::invalid_argument
/// unless the PWM period is an integer multiple of dt.
std::int64_t steps_per_period(const PwmModulator& modulator, double dt);

namespace detail {

template <class Law>
double internal_signal_magnitude(const Law& law) {
  if constexpr (requires { law.signals(); }) {
    const auto& s = law.signals();
    return std::max({std::abs(s.proportional), std::abs(s.integral),
                     std::abs(s.derivative), std::abs(s.unsaturated)});
  } else {
    return 0.0;
  }
}

/// Streaming one-period moving average.
class RippleAverager {
 public:
  explicit RippleAverager(std::size_t window) : buffer_(window, 0.0) {}
  double push(double v) {
    sum_ += v - buffer_[head_];
    buffer_[head_] = v;
    head_ = (head_ + 1) % buffer_.size();
    count_ = std::min(count_ + 1, buffer_.size());
    return sum_ / static_cast<double>(count_);
  }

 private:
  std::vector<double> buffer_;
  std::size_t head_ = 0;
  std::size_t count_ = 0;
  double sum_ = 0.0;
};

}  // namespace detail

/// Fixed-step closed loop: error -> law -> PWM -> plant, sampled every dt.
///
/// At sample n (t = n*dt, n = 0..horizon/dt) the output is measured with the
/// switch position of the previous step, the law is updated, the PWM decides
/// the switch, and the plant advances one step. The run aborts with
/// stable = false when a plant state or an internal controller signal exceeds
/// the break threshold or turns non-finite.
template <ControlLaw Law>
SimResult simulate_law(Law law, const ConverterParams& plant, PwmModulator modulator,
                       const Scenario& scenario) {
  plant.validate();
  scenario.validate();
  const std::int64_t period_steps = steps_per_period(modulator, scenario.dt);
  const auto steps = static_cast<std::int64_t>(std::llround(scenario.horizon / scenario.dt));

  ConverterParams params = plant;
  const double v_g_nominal = plant.v_g;
  std::optional<std::int64_t> disturbance_step;
  if (scenario.disturbance) {
    disturbance_step = std::llround(scenario.disturbance->time / scenario.dt);
  }

  SimResult result;
  const bool recording = scenario.record_decimation > 0;
  if (recording) {
    const auto n = static_cast<std::size_t>(steps / scenario.record_decimation + 2);
    Trace& tr = result.trace;
    tr.time.reserve(n);
    tr.v_out.reserve(n);
    tr.v_filtered.reserve(n);
    tr.i_l.reserve(n);
    tr.duty.reserve(n);
    tr.switch_state.reserve(n);
  }

  detail::RippleAverager averager(static_cast<std::size_t>(period_steps));
  const double band = scenario.settling_band * scenario.v_ref;
  double first_sample_after_outside = -1.0;  // < 0: currently outside
  bool ever_outside = false;
  double max_filtered = -INFINITY;

  ConverterState state;
  modulator.reset();
  bool switch_prev = false;
  bool has_prev_sample = false;
  double prev_abs_error = 0.0;

  for (std::int64_t n = 0; n <= steps; ++n) {
    const double t = static_cast<double>(n) * scenario.dt;
    if (disturbance_step && n == *disturbance_step) {
      params.v_g = v_g_nominal * (1.0 + scenario.disturbance->relative_step);
    }

    const double v_out = output_voltage(state, switch_prev, params);
    const double error = scenario.v_ref - v_out;
    const double duty = static_cast<double>(law.update(error));
    const bool switch_on = modulator.gate(duty, t);

    const double internal = detail::internal_signal_magnitude(law);
    const bool finite = std::isfinite(state.i_l) && std::isfinite(state.v_c) &&
                        std::isfinite(duty) && std::isfinite(internal);
    if (!finite || std::abs(state.i_l) > scenario.break_threshold ||
        std::abs(state.v_c) > scenario.break_threshold ||
        internal > scenario.break_threshold) {
      result.stable = false;
      result.blowup_time = t;
      result.final_time = t;
      break;
    }

    const double abs_error = std::abs(error);
    if (has_prev_sample) result.j_iae += 0.5 * scenario.dt * (abs_error + prev_abs_error);
    if (has_prev_sample && switch_on != switch_prev) ++result.switch_count;
    prev_abs_error = abs_error;

    const double filtered = averager.push(v_out);
    max_filtered = std::max(max_filtered, filtered);
    if (std::abs(filtered - scenario.v_ref) > band) {
      ever_outside = true;
      first_sample_after_outside = -1.0;
    } else if (ever_outside && first_sample_after_outside < 0.0) {
      first_sample_after_outside = t;
    }

    if (recording && n % scenario.record_decimation == 0) {
      Trace& tr = result.trace;
      tr.time.push_back(t);
      tr.v_out.push_back(v_out);
      tr.v_filtered.push_back(filtered);
      tr.i_l.push_back(state.i_l);
      tr.duty.push_back(duty);
      tr.switch_state.push_back(switch_on ? 1 : 0);
    }

    has_prev_sample = true;
    switch_prev = switch_on;
    result.final_time = t;
    if (n < steps) state = step_state(state, switch_on, params, scenario.dt);
  }

  result.overshoot_pct =
      std::isfinite(max_filtered)
          ? 100.0 * std::max(0.0, max_filtered - scenario.v_ref) / scenario.v_ref
          : 0.0;
  if (!ever_outside) {
    result.settling_time = 0.0;
  } else if (first_sample_after_outside >= 0.0) {
    result.settling_time = first_sample_after_outside;
  }
  return result;
}

/// simulate_law for a built controller; the controller is copied and reset,
/// so the call is reentrant. Throws std::invalid_argument when the controller
/// dt differs from the scenario dt.
SimResult simulate(const Controller& controller, const ConverterParams& plant,
                   const PwmModulator& modulator, const Scenario& scenario);

}  // namespace fracboost
