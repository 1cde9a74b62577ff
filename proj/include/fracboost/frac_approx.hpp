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
#include <vector>

namespace fracboost {

/// Frequency band and section count of an Oustaloup approximation.
struct OraBand {
  double omega_low = 1e-1;   // rad/s
  double omega_high = 1e6;   // rad/s
  int sections = 8;

  /// Throws std::invalid_argument unless 0 < omega_low < omega_high and sections >= 1.
  void validate() const;
};

/// Oustaloup configuration for one power s^order.
struct OraConfig {
  double order = 0.5;
  OraBand band;
};

/// Band-limited rational approximation of s^nu:
///
///   H(s) = s^integer_power * gain * prod_n (1 + s/zeros[n]) / (1 + s/poles[n])
///
/// zeros and poles are corner frequencies in rad/s (all positive). An empty
/// product with gain 1 is the identity.
struct RationalApprox {
  std::vector<double> zeros;
  std::vector<double> poles;
  double gain = 1.0;
  int integer_power = 0;

  static RationalApprox identity() { return {}; }

  std::size_t sections() const { return zeros.size(); }
  bool rational_part_is_identity() const { return zeros.empty() && gain == 1.0; }
};

/// Oustaloup recursion for 0 < order < 1.
///
/// Corner frequencies follow
///   w_z1 = w_l * sqrt(eta),  w_pn = w_zn * alpha,  w_z(n+1) = w_pn * eta
/// with alpha = (w_h/w_l)^(order/N) and eta = (w_h/w_l)^((1-order)/N), so the
/// pole/zero pairs interlace and tile the band exactly. The gain is set by
/// normalize_gain(). Throws std::invalid_argument for an order outside (0, 1)
/// or an invalid band.
RationalApprox ora_build(const OraConfig& cfg);

/// Returns a copy with gain chosen so that the rational product has unit
/// magnitude at 1 rad/s. integer_power factors are excluded (|j^n| = 1 anyway).
RationalApprox normalize_gain(RationalApprox approx);

/// Exact inverse: zeros and poles swapped, gain reciprocal, integer power negated.
RationalApprox invert(const RationalApprox& approx);

/// Approximation of s^nu for any real nu.
///
/// nu is split as nu = n + delta with n = floor(nu) and delta in [0, 1); only
/// s^delta is approximated and n is carried exactly in integer_power, so
/// s^-0.7 becomes s^-1 * s^0.3. delta == 0 gives an identity rational part.
RationalApprox approximate_power(double nu, const OraBand& band);

/// H(j*omega) including the (j*omega)^integer_power factor. omega > 0.
std::complex<double> freq_response(const RationalApprox& approx, double omega);

}  // namespace fracboost
