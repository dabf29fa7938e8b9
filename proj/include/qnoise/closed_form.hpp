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

#pragma once

#include "qnoise/qubit.hpp"

namespace qnoise {

/// One frozen noise value: x off-diagonal, y diagonal (xi1 - xi2), eps the
/// Bohr energy E1 - E2. The dynamics depends on (a, b, z) only through
/// a - b = eps + y and z = x.
struct NoiseCoordinates {
  double x{0.0};
  double y{0.0};
  double eps{1.0};

  FrozenHamiltonian hamiltonian() const noexcept { return {eps + y, 0.0, x}; }
};

/// P = 2x / (eps + y) and its bounded reparametrization R = P / (1 + sqrt(1 + P^2)).
/// Geometrically P = tan(theta), R = tan(theta / 2) with theta the mixing
/// angle of the eigenvectors. `phase` is the Bohr frequency of the frozen
/// Hamiltonian, (eps + y) sqrt(1 + P^2).
struct PhaseData {
  double P{0.0};
  double R{0.0};
  double phase{0.0};
};

/// Throws DomainError when eps + y <= 0.
PhaseData phase_data(const NoiseCoordinates& c);

/// Amplitudes of the oscillating terms:
///   rho11(t) = stationary + 2 Re(exp(-i phase t) h)
///   rho12(t) = stationary + exp(-i phase t) g1 + exp(+i phase t) g2
struct OscillatoryAmplitudes {
  complex h;
  complex g1;
  complex g2;
};

/// Throws DomainError when |R| >= 1.
OscillatoryAmplitudes hg_functions(const DensityMatrix& rho0, double R);

/// Time-independent coefficient functions; their noise averages are the
/// final-state coefficients (alpha, beta, gamma). f_beta + 2 f_alpha == 1.
struct StationaryCoeffs {
  double f_alpha{0.0};
  double f_beta{1.0};
  double f_gamma{0.0};
};

/// Defined for all R; |R| >= 1 returns the limit (1/2, 0, 0).
StationaryCoeffs stationary_coeffs(double R) noexcept;

/// Stationary part of rho(t) for a frozen realization with coefficients f.
DensityMatrix stationary_part(const StationaryCoeffs& f, const DensityMatrix& rho0) noexcept;

/// Closed-form rho(t) of a frozen realization. Requires t >= 0.
DensityMatrix rho_t(const DensityMatrix& rho0, const NoiseCoordinates& c, double t);

}  // namespace qnoise
