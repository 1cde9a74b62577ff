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

#include "fracboost/simloop.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace fracboost {

void Scenario::validate() const {
  if (!(horizon > 0.0) || !std::isfinite(horizon)) {
    throw std::invalid_argument("scenario: horizon must be positive");
  }
  if (!(dt > 0.0) || !std::isfinite(dt) || dt > horizon) {
    throw std::invalid_argument("scenario: dt must be positive and below the horizon");
  }
  if (record_decimation < 0) {
    throw std::invalid_argument("scenario: record_decimation must be >= 0");
  }
  if (!(break_threshold > 0.0)) {
    throw std::invalid_argument("scenario: break_threshold must be positive");
  }
  if (!(settling_band > 0.0)) {
    throw std::invalid_argument("scenario: settling_band must be positive");
  }
  if (disturbance) {
    if (!(disturbance->time >= 0.0 && disturbance->time <= horizon)) {
      throw std::invalid_argument("scenario: disturbance time " +
                                  std::to_string(disturbance->time) +
                                  " s lies outside the horizon");
    }
    if (!(disturbance->relative_step > -1.0) || !std::isfinite(disturbance->relative_step)) {
      throw std::invalid_argument("scenario: disturbance step must exceed -100%");
    }
  }
}

double iae(std::span<const double> time, std::span<const double> v, double v_ref,
           double horizon) {
  if (time.size() != v.size()) throw std::invalid_argument("iae: size mismatch");
  if (time.empty() || time.back() < horizon * (1.0 - 1e-12)) {
    throw std::invalid_argument("iae: trace is shorter than the horizon");
  }
  double total = 0.0;
  for (std::size_t k = 1; k < time.size() && time[k - 1] < horizon; ++k) {
    const double e0 = std::abs(v[k - 1] - v_ref);
    double e1 = std::abs(v[k] - v_ref);
    double t1 = time[k];
    if (t1 > horizon) {
      const double w = (horizon - time[k - 1]) / (time[k] - time[k - 1]);
      e1 = std::abs((v[k - 1] + w * (v[k] - v[k - 1])) - v_ref);
      t1 = horizon;
    }
    total += 0.5 * (t1 - time[k - 1]) * (e0 + e1);
  }
  return total;
}

double overshoot_pct(std::span<const double> filtered, double v_ref) {
  double peak = -INFINITY;
  for (double v : filtered) peak = std::max(peak, v);
  if (!std::isfinite(peak)) return 0.0;
  return 100.0 * std::max(0.0, peak - v_ref) / v_ref;
}

std::optional<double> settling_time(std::span<const double> time,
                                    std::span<const double> filtered, double v_ref,
                                    double band) {
  if (time.size() != filtered.size()) {
    throw std::invalid_argument("settling_time: size mismatch");
  }
  if (time.empty()) return std::nullopt;
  const double tol = band * std::abs(v_ref);
  for (std::size_t k = time.size(); k-- > 0;) {
    if (std::abs(filtered[k] - v_ref) > tol) {
      if (k + 1 == time.size()) return std::nullopt;
      return time[k + 1];
    }
  }
  return time.front();
}

std::int64_t switch_count(std::span<const double> time,
                          std::span<const std::uint8_t> switch_state, double t0, double t1) {
  if (time.size() != switch_state.size()) {
    throw std::invalid_argument("switch_count: size mismatch");
  }
  std::int64_t count = 0;
  for (std::size_t k = 1; k < time.size(); ++k) {
    if (time[k - 1] >= t0 && time[k] <= t1 && switch_state[k] != switch_state[k - 1]) ++count;
  }
  return count;
}

std::vector<double> ripple_filter(std::span<const double> values, std::size_t window) {
  if (window == 0) throw std::invalid_argument("ripple_filter: window must be positive");
  std::vector<double> out;
  out.reserve(values.size());
  detail::RippleAverager averager(window);
  for (double v : values) out.push_back(averager.push(v));
  return out;
}

std::int64_t steps_per_period(const PwmModulator& modulator, double dt) {
  const double ratio = modulator.period() / dt;
  const auto steps = static_cast<std::int64_t>(std::llround(ratio));
  if (steps < 1 || std::abs(ratio - static_cast<double>(steps)) > 1e-6 * ratio) {
    throw std::invalid_argument("PWM period (" + std::to_string(modulator.period()) +
                                " s) is not an integer multiple of dt (" +
                                std::to_string(dt) + " s)");
  }
  return steps;
}

SimResult simulate(const Controller& controller, const ConverterParams& plant,
                   const PwmModulator& modulator, const Scenario& scenario) {
  if (std::abs(controller.dt() - scenario.dt) > 1e-12 * scenario.dt) {
    throw std::invalid_argument("controller dt differs from the simulation dt");
  }
  Controller law = controller;
  law.reset();
  return simulate_law(std::move(law), plant, modulator, scenario);
}

}  // namespace fracboost
