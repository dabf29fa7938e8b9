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

#include <array>
#include <complex>

namespace qnoise {

using complex = std::complex<double>;

/// Qubit state in the energy basis {Phi1, Phi2}.
///
/// Only rho11 and rho12 are stored: rho22 = 1 - rho11 and rho21 = conj(rho12),
/// so trace one and Hermiticity hold by construction. Positivity
/// (|rho12|^2 <= rho11 (1 - rho11)) is not enforced; see is_positive().
struct DensityMatrix {
  double rho11{1.0};
  complex rho12{0.0, 0.0};

  double rho22() const noexcept { return 1.0 - rho11; }
  complex rho21() const noexcept { return std::conj(rho12); }

  bool is_positive(double tol = 1e-12) const noexcept;

  static DensityMatrix maximally_mixed() noexcept { return {0.5, {0.0, 0.0}}; }
  /// |psi><psi| for psi = a1 Phi1 + a2 Phi2 (normalized internally).
  static DensityMatrix pure(complex a1, complex a2);
};

/// H = [[a, z], [z, b]] for one frozen noise realization:
/// a = E1 + xi1, b = E2 + xi2, z = xi_o.
struct FrozenHamiltonian {
  double a{0.0};
  double b{0.0};
  double z{0.0};

  /// 1e-14 * max(|a|, |b|, |z|, 1)
  double degeneracy_tolerance() const noexcept;
  /// True when (a - b)^2 + 4 z^2 falls below degeneracy_tolerance(), i.e. H is
  /// numerically a multiple of the identity and the dynamics is trivial.
  bool degenerate() const noexcept;
};

/// Eigenpairs of a FrozenHamiltonian, lambda1 >= lambda2. Eigenvector
/// components are given in the Phi1/Phi2 basis and are real because z is.
struct SpectralData {
  double lambda1{0.0};
  double lambda2{0.0};
  std::array<double, 2> psi1{1.0, 0.0};
  std::array<double, 2> psi2{0.0, 1.0};
  /// Set when H is an identity multiple; eigenvectors are then the canonical
  /// basis and lambda1 == lambda2.
  bool identity_multiple{false};
};

SpectralData eigendecompose(const FrozenHamiltonian& h);

/// Brute-force evolution rho(t) = sum_jk exp(-i t (l_j - l_k)) P_j rho0 P_k.
DensityMatrix evolve_oracle(const FrozenHamiltonian& h, const DensityMatrix& rho0, double t);

/// A state written in the delocalized basis Phi+- = (Phi1 +- Phi2)/sqrt(2).
struct DelocalizedDensity {
  double rho_pp{0.5};
  complex rho_pm{0.0, 0.0};

  double rho_mm() const noexcept { return 1.0 - rho_pp; }
};

DelocalizedDensity to_delocalized(const DensityMatrix& rho) noexcept;
DensityMatrix from_delocalized(const DelocalizedDensity& rho) noexcept;

/// tr(rho^2), in [1/2, 1] for valid states.
double purity(const DensityMatrix& rho) noexcept;

/// Frobenius norm of rho_a - rho_b (all four entries).
double frobenius_distance(const DensityMatrix& rho_a, const DensityMatrix& rho_b) noexcept;

}  // namespace qnoise
