// Copyright 2026 The qnoise Authors
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

#include "qnoise/closed_form.hpp"

#include <cmath>

#include "qnoise/errors.hpp"

namespace qnoise {

PhaseData phase_data(const NoiseCoordinates& c) {
  const double s = c.eps + c.y;
  if (!(s > 0.0)) {
    throw DomainError("phase_data: eps + y must be positive (diagonal noise exceeds the Bohr energy)");
  }
  const double root = std::hypot(s, 2.0 * c.x);
  PhaseData out;
  out.P = 2.0 * c.x / s;
  out.R = 2.0 * c.x / (s + root);
  out.phase = root;
  return out;
}

OscillatoryAmplitudes hg_functions(const DensityMatrix& rho0, double R) {
  if (!(std::abs(R) < 1.0)) throw DomainError("hg_functions: |R| must be < 1");
  const double c = 2.0 * rho0.rho11 - 1.0;
  const complex r12 = rho0.rho12;
  const complex r21 = rho0.rho21();
  const double R2 = R * R;
  const double inv_d = 1.0 / ((1.0 + R2) * (1.0 + R2));

  OscillatoryAmplitudes a;
  a.h = R * (c * R + r21 * R2 - r12) * inv_d;
  a.g1 = -(c * R + r21 * R2 - r12) * inv_d;
  a.g2 = R2 * (c * R - r21 + r12 * R2) * inv_d;
  return a;
}

StationaryCoeffs stationary_coeffs(double R) noexcept {
  if (!(std::abs(R) < 1.0)) return {0.5, 0.0, 0.0};
  const double R2 = R * R;
  const double q = 1.0 + R2;
  const double inv_d = 1.0 / (q * q);
  const double ratio = (1.0 - R2) / q;
  return {2.0 * R2 * inv_d, ratio * ratio, R * (R2 - 1.0) * inv_d};
}

DensityMatrix stationary_part(const StationaryCoeffs& f, const DensityMatrix& rho0) noexcept {
  const double re12 = rho0.rho12.real();
  return {f.f_alpha + f.f_beta * rho0.rho11 - 2.0 * f.f_gamma * re12,
          complex{f.f_gamma * (1.0 - 2.0 * rho0.rho11) + 2.0 * f.f_alpha * re12, 0.0}};
}

DensityMatrix rho_t(const DensityMatrix& rho0, const NoiseCoordinates& c, double t) {
  if (t < 0.0) throw DomainError("rho_t: t must be >= 0");
  const PhaseData pd = phase_data(c);
  if (t == 0.0) return rho0;
  const OscillatoryAmplitudes amp = hg_functions(rho0, pd.R);
  DensityMatrix out = stationary_part(stationary_coeffs(pd.R), rho0);

  const complex e = std::polar(1.0, -pd.phase * t);
  out.rho11 += 2.0 * (e * amp.h).real();
  out.rho12 += e * amp.g1 + std::conj(e) * amp.g2;
  return out;
}

}  // namespace qnoise
