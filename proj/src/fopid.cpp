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

#include "fracboost/fopid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace fracboost {

void FopidParams::validate() const {
  if (!std::isfinite(kp)) throw std::invalid_argument("FOPID: kp must be finite");
  if (!(ti > 0.0) || !std::isfinite(ti)) {
    throw std::invalid_argument("FOPID: ti must be positive, got " + std::to_string(ti));
  }
  if (!(td >= 0.0) || !std::isfinite(td)) {
    throw std::invalid_argument("FOPID: td must be non-negative, got " + std::to_string(td));
  }
  if (!(lambda > 0.0 && lambda <= kMaxOrder)) {
    throw std::invalid_argument("FOPID: lambda must lie in (0, 1.2], got " +
                                std::to_string(lambda));
  }
  if (!(mu > 0.0 && mu <= kMaxOrder)) {
    throw std::invalid_argument("FOPID: mu must lie in (0, 1.2], got " + std::to_string(mu));
  }
}

void SaturationLimits::validate() const {
  if (!std::isfinite(u_min) || !std::isfinite(u_max) || !(u_min < u_max)) {
    throw std::invalid_argument("saturation limits must be finite with u_min < u_max");
  }
}

Controller::Controller(double kp, DiscreteFilter integral, DiscreteFilter derivative,
                       SaturationLimits limits)
    : kp_(kp),
      integral_(std::move(integral)),
      derivative_(std::move(derivative)),
      limits_(limits) {
  if (integral_.dt() != derivative_.dt()) {
    throw std::invalid_argument("controller branches must share the same dt");
  }
  limits_.validate();
}

double Controller::update(double error) {
  const double p = kp_ * error;
  const double d = derivative_.step(error);
  const double i_candidate = integral_.peek(error);

  const double trial = p + i_candidate + d;
  const bool pushes_high = trial > limits_.u_max && i_candidate > integral_held_;
  const bool pushes_low = trial < limits_.u_min && i_candidate < integral_held_;
  const bool freeze = pushes_high || pushes_low;
  if (!freeze) {
    integral_.step(error);
    integral_held_ = i_candidate;
  }

  const double unsaturated = p + integral_held_ + d;
  const double u = std::clamp(unsaturated, limits_.u_min, limits_.u_max);
  signals_ = {p, integral_held_, d, unsaturated, u, freeze};
  return u;
}

void Controller::reset() {
  integral_.reset();
  derivative_.reset();
  integral_held_ = 0.0;
  signals_ = {};
}

std::complex<double> Controller::discrete_response(double omega) const {
  return kp_ + integral_.discrete_response(omega) + derivative_.discrete_response(omega);
}

Controller build_fopid(const FopidParams& params, const OraBand& band, double dt,
                       SaturationLimits limits, double differentiator_tau) {
  params.validate();
  band.validate();
  if (!(dt > 0.0)) throw std::invalid_argument("build_fopid: dt must be positive");

  // s^-lambda = s^-1 * s^(1 - lambda): the explicit s^-1 keeps infinite DC gain.
  RationalApprox integral = approximate_power(1.0 - params.lambda, band);
  integral.integer_power -= 1;
  integral.gain *= params.kp / params.ti;

  RationalApprox derivative = approximate_power(params.mu, band);
  derivative.gain *= params.kp * params.td;

  return Controller(params.kp, DiscreteFilter::realize(integral, dt, differentiator_tau),
                    DiscreteFilter::realize(derivative, dt, differentiator_tau), limits);
}

Controller build_pid(const FopidParams& params, double dt, SaturationLimits limits,
                     double differentiator_tau) {
  params.validate();
  if (!params.is_integer_order()) {
    throw std::invalid_argument("build_pid: lambda and mu must both be 1");
  }
  if (!(dt > 0.0)) throw std::invalid_argument("build_pid: dt must be positive");

  RationalApprox integral;
  integral.integer_power = -1;
  integral.gain = 1.0;
  integral.gain *= params.kp / params.ti;

  RationalApprox derivative;
  derivative.integer_power = 1;
  derivative.gain = 1.0;
  derivative.gain *= params.kp * params.td;

  return Controller(params.kp, DiscreteFilter::realize(integral, dt, differentiator_tau),
                    DiscreteFilter::realize(derivative, dt, differentiator_tau), limits);
}

std::complex<double> ideal_fopid_response(const FopidParams& params, double omega) {
  const std::complex<double> jw{0.0, omega};
  return params.kp * (1.0 + 1.0 / (params.ti * std::pow(jw, params.lambda)) +
                      params.td * std::pow(jw, params.mu));
}

std::complex<double> approx_fopid_response(const FopidParams& params, const OraBand& band,
                                           double omega) {
  const auto integral = freq_response(approximate_power(-params.lambda, band), omega);
  const auto derivative = freq_response(approximate_power(params.mu, band), omega);
  return params.kp * (1.0 + integral / params.ti + params.td * derivative);
}

}  // namespace fracboost
