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

#include <complex>
#include <span>
#include <vector>

#include "fracboost/frac_approx.hpp"

namespace fracboost {

/// First-order discrete recurrence y[n] = b0*u[n] + b1*u[n-1] - a1*y[n-1],
/// stored in transposed direct form II (one state value).
struct FirstOrderSection {
  double b0 = 1.0;
  double b1 = 0.0;
  double a1 = 0.0;
  double state = 0.0;

  /// (1 + s/omega_zero) / (1 + s/omega_pole) under the trapezoidal map.
  static FirstOrderSection lead_lag(double omega_zero, double omega_pole, double dt);
  /// Trapezoidal integrator 1/s.
  static FirstOrderSection integrator(double dt);
  /// s / (1 + s*tau) under the trapezoidal map.
  static FirstOrderSection filtered_differentiator(double tau, double dt);

  double step(double u) {
    const double y = b0 * u + state;
    state = b1 * u - a1 * y;
    return y;
  }
  double peek(double u) const { return b0 * u + state; }

  /// Section transfer function at z^-1 = z_inv.
  std::complex<double> response(std::complex<double> z_inv) const {
    return (b0 + b1 * z_inv) / (1.0 + a1 * z_inv);
  }

  friend bool operator==(const FirstOrderSection&, const FirstOrderSection&) = default;
};

/// Cascade realization of s^n * k * prod (1 + s/wz)/(1 + s/wp) at a fixed step.
///
/// Evaluation order is fixed: gain, lead-lag sections, integrators,
/// differentiators. Identical input sequences give bit-identical outputs.
class DiscreteFilter {
 public:
  DiscreteFilter() = default;

  /// Discretizes approx with step dt. Positive integer powers become filtered
  /// differentiators s/(1 + s*tau); tau <= 0 selects the default 2*dt.
  /// Negative integer powers become trapezoidal integrators.
  /// Throws std::invalid_argument for dt <= 0.
  static DiscreteFilter realize(const RationalApprox& approx, double dt,
                                double differentiator_tau = 0.0);

  double step(double u);
  /// Output step(u) would return, without advancing any state.
  double peek(double u) const;
  void reset();

  double dt() const { return dt_; }
  double gain() const { return gain_; }
  std::span<const FirstOrderSection> stages() const { return stages_; }
  int lead_lag_count() const { return lead_lag_count_; }
  int integrator_count() const { return integrator_count_; }
  int differentiator_count() const { return differentiator_count_; }

  /// H(exp(j*omega*dt)) of the realized cascade.
  std::complex<double> discrete_response(double omega) const;

  friend bool operator==(const DiscreteFilter&, const DiscreteFilter&) = default;

 private:
  double dt_ = 1.0;
  double gain_ = 1.0;
  std::vector<FirstOrderSection> stages_;
  int lead_lag_count_ = 0;
  int integrator_count_ = 0;
  int differentiator_count_ = 0;
};

}  // namespace fracboost
