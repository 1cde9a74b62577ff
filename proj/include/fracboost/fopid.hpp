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

#include "fracboost/frac_approx.hpp"
#include "fracboost/lti.hpp"

namespace fracboost {

/// Tunables of Kp * (1 + 1/(Ti s^lambda) + Td s^mu).
struct FopidParams {
  double kp = 1.0;
  double ti = 1e-3;     // s^lambda
  double td = 0.0;      // s^mu
  double lambda = 1.0;
  double mu = 1.0;

  static constexpr double kMaxOrder = 1.2;

  /// Throws std::invalid_argument unless kp is finite, ti > 0, td >= 0 and
  /// both orders lie in (0, kMaxOrder].
  void validate() const;
  bool is_integer_order() const { return lambda == 1.0 && mu == 1.0; }

  friend bool operator==(const FopidParams&, const FopidParams&) = default;
};

/// Duty-cycle command range.
struct SaturationLimits {
  double u_min = 0.0;
  double u_max = 0.9;

  void validate() const;
};

/// Branch outputs of the most recent update().
struct ControllerSignals {
  double proportional = 0.0;
  double integral = 0.0;
  double derivative = 0.0;
  double unsaturated = 0.0;
  double output = 0.0;
  bool integral_frozen = false;
};

/// Discrete three-branch controller u = sat(P + I + D).
///
/// The integral branch is Kp/Ti * s^-1 * s^(1-lambda) so that it keeps an
/// exact pole at zero; the derivative branch is Kp*Td * s^mu. Integration is
/// conditional: while the output is saturated and the integral branch would
/// push it further out of range, the branch state is held.
class Controller {
 public:
  Controller() = default;
  Controller(double kp, DiscreteFilter integral, DiscreteFilter derivative,
             SaturationLimits limits);

  /// One sample of the control law; returns the saturated duty command.
  double update(double error);
  void reset();

  double dt() const { return integral_.dt(); }
  double proportional_gain() const { return kp_; }
  const DiscreteFilter& integral_branch() const { return integral_; }
  const DiscreteFilter& derivative_branch() const { return derivative_; }
  const SaturationLimits& limits() const { return limits_; }
  const ControllerSignals& signals() const { return signals_; }

  /// Frequency response of the realized (discrete) controller, unsaturated.
  std::complex<double> discrete_response(double omega) const;

  friend bool operator==(const Controller& a, const Controller& b) {
    return a.kp_ == b.kp_ && a.integral_ == b.integral_ &&
           a.derivative_ == b.derivative_ && a.limits_.u_min == b.limits_.u_min &&
           a.limits_.u_max == b.limits_.u_max;
  }

 private:
  double kp_ = 0.0;
  DiscreteFilter integral_;
  DiscreteFilter derivative_;
  SaturationLimits limits_;
  double integral_held_ = 0.0;
  ControllerSignals signals_;
};

/// Fractional-order controller realized through Oustaloup sections over band.
/// lambda == 1 and mu == 1 reduce to an exact integrator and a filtered
/// differentiator with identity fractional parts.
Controller build_fopid(const FopidParams& params, const OraBand& band, double dt,
                       SaturationLimits limits = {}, double differentiator_tau = 0.0);

/// Integer-order PID; params.lambda and params.mu must both be 1.
Controller build_pid(const FopidParams& params, double dt, SaturationLimits limits = {},
                     double differentiator_tau = 0.0);

/// Kp * (1 + 1/(Ti (j w)^lambda) + Td (j w)^mu), the ideal fractional law.
std::complex<double> ideal_fopid_response(const FopidParams& params, double omega);

/// Same law with each fractional power replaced by its Oustaloup rational
/// approximation over band (continuous time, no derivative filter).
std::complex<double> approx_fopid_response(const FopidParams& params, const OraBand& band,
                                           double omega);

}  // namespace fracboost
