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

#include "fracboost/lti.hpp"

#include <atomic>
#include <cmath>
#include <iostream>
#include <stdexcept>

namespace fracboost {

namespace {

std::atomic<bool> g_warned_warping{false};

}  // namespace

FirstOrderSection FirstOrderSection::lead_lag(double omega_zero, double omega_pole,
                                              double dt) {
  // s <- K (1 - z^-1)/(1 + z^-1), K = 2/dt, multiplied through by (1 + z^-1).
  const double k = 2.0 / dt;
  const double kz = k / omega_zero;
  const double kp = k / omega_pole;
  const double norm = 1.0 + kp;
  FirstOrderSection s;
  s.b0 = (1.0 + kz) / norm;
  s.b1 = (1.0 - kz) / norm;
  s.a1 = (1.0 - kp) / norm;
  return s;
}

FirstOrderSection FirstOrderSection::integrator(double dt) {
  FirstOrderSection s;
  s.b0 = 0.5 * dt;
  s.b1 = 0.5 * dt;
  s.a1 = -1.0;
  return s;
}

FirstOrderSection FirstOrderSection::filtered_differentiator(double tau, double dt) {
  const double k = 2.0 / dt;
  const double norm = 1.0 + tau * k;
  FirstOrderSection s;
  s.b0 = k / norm;
  s.b1 = -k / norm;
  s.a1 = (1.0 - tau * k) / norm;
  return s;
}

DiscreteFilter DiscreteFilter::realize(const RationalApprox& approx, double dt,
                                       double differentiator_tau) {
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw std::invalid_argument("realize: dt must be positive");
  }
  if (approx.zeros.size() != approx.poles.size()) {
    throw std::invalid_argument("realize: zeros and poles differ in length");
  }
  const double tau = differentiator_tau > 0.0 ? differentiator_tau : 2.0 * dt;

  DiscreteFilter f;
  f.dt_ = dt;
  f.gain_ = approx.gain;
  f.stages_.reserve(approx.zeros.size() + std::abs(approx.integer_power));

  for (std::size_t n = 0; n < approx.zeros.size(); ++n) {
    const double corner = std::max(approx.zeros[n], approx.poles[n]);
    if (dt * corner >= 2.0 && !g_warned_warping.exchange(true)) {
      std::clog << "warning: corner frequency " << corner << " rad/s exceeds 2/dt; "
                << "the trapezoidal map will warp it noticeably\n";
    }
    f.stages_.push_back(FirstOrderSection::lead_lag(approx.zeros[n], approx.poles[n], dt));
    ++f.lead_lag_count_;
  }
  for (int k = 0; k > approx.integer_power; --k) {
    f.stages_.push_back(FirstOrderSection::integrator(dt));
    ++f.integrator_count_;
  }
  for (int k = 0; k < approx.integer_power; ++k) {
    f.stages_.push_back(FirstOrderSection::filtered_differentiator(tau, dt));
    ++f.differentiator_count_;
  }
  return f;
}

double DiscreteFilter::step(double u) {
  double y = gain_ * u;
  for (auto& s : stages_) y = s.step(y);
  return y;
}

double DiscreteFilter::peek(double u) const {
  double y = gain_ * u;
  for (const auto& s : stages_) y = s.peek(y);
  return y;
}

void DiscreteFilter::reset() {
  for (auto& s : stages_) s.state = 0.0;
}

std::complex<double> DiscreteFilter::discrete_response(double omega) const {
  const std::complex<double> z_inv = std::polar(1.0, -omega * dt_);
  std::complex<double> h{gain_, 0.0};
  for (const auto& s : stages_) h *= s.response(z_inv);
  return h;
}

}  // namespace fracboost
