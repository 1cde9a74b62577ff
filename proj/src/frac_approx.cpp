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

#include "fracboost/frac_approx.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace fracboost {

namespace {

// Orders closer than this to an integer are treated as that integer.
constexpr double kIntegerOrderTolerance = 1e-12;

std::complex<double> rational_product(const RationalApprox& approx, double omega) {
  std::complex<double> h{approx.gain, 0.0};
  for (std::size_t n = 0; n < approx.zeros.size(); ++n) {
    h *= std::complex<double>(1.0, omega / approx.zeros[n]) /
         std::complex<double>(1.0, omega / approx.poles[n]);
  }
  return h;
}

}  // namespace

void OraBand::validate() const {
  if (!(omega_low > 0.0) || !std::isfinite(omega_low)) {
    throw std::invalid_argument("ORA band: omega_low must be positive, got " +
                                std::to_string(omega_low));
  }
  if (!(omega_high > omega_low) || !std::isfinite(omega_high)) {
    throw std::invalid_argument("ORA band: omega_high must exceed omega_low");
  }
  if (sections < 1) {
    throw std::invalid_argument("ORA band: sections must be >= 1, got " +
                                std::to_string(sections));
  }
}

RationalApprox ora_build(const OraConfig& cfg) {
  cfg.band.validate();
  const double nu = cfg.order;
  if (!(nu > 0.0 && nu < 1.0)) {
    throw std::invalid_argument("ora_build: order must lie in (0, 1), got " +
                                std::to_string(nu));
  }

  const int n_sections = cfg.band.sections;
  const double ratio = cfg.band.omega_high / cfg.band.omega_low;
  const double alpha = std::pow(ratio, nu / n_sections);
  const double eta = std::pow(ratio, (1.0 - nu) / n_sections);

  RationalApprox approx;
  approx.zeros.reserve(n_sections);
  approx.poles.reserve(n_sections);
  double zero = cfg.band.omega_low * std::sqrt(eta);
  for (int n = 0; n < n_sections; ++n) {
    const double pole = zero * alpha;
    approx.zeros.push_back(zero);
    approx.poles.push_back(pole);
    zero = pole * eta;
  }
  return normalize_gain(std::move(approx));
}

RationalApprox normalize_gain(RationalApprox approx) {
  approx.gain = 1.0;
  approx.gain = 1.0 / std::abs(rational_product(approx, 1.0));
  return approx;
}

RationalApprox invert(const RationalApprox& approx) {
  RationalApprox inv;
  inv.zeros = approx.poles;
  inv.poles = approx.zeros;
  inv.gain = 1.0 / approx.gain;
  inv.integer_power = -approx.integer_power;
  return inv;
}

RationalApprox approximate_power(double nu, const OraBand& band) {
  band.validate();
  if (!std::isfinite(nu)) {
    throw std::invalid_argument("approximate_power: order must be finite");
  }
  double whole = std::floor(nu);
  double frac = nu - whole;
  if (frac > 1.0 - kIntegerOrderTolerance) {
    whole += 1.0;
    frac = 0.0;
  }

  RationalApprox approx;
  if (frac > kIntegerOrderTolerance) {
    approx = ora_build(OraConfig{frac, band});
  }
  approx.integer_power = static_cast<int>(whole);
  return approx;
}

std::complex<double> freq_response(const RationalApprox& approx, double omega) {
  std::complex<double> h = rational_product(approx, omega);
  const std::complex<double> jw{0.0, omega};
  for (int k = 0; k < approx.integer_power; ++k) h *= jw;
  for (int k = 0; k > approx.integer_power; --k) h /= jw;
  return h;
}

}  // namespace fracboost
