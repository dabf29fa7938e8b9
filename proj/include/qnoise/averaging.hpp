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
#include <cstdint>
#include <string>
#include <vector>

#include "qnoise/decay_series.hpp"
#include "qnoise/noise_density.hpp"
#include "qnoise/phase_spectrum.hpp"
#include "qnoise/qubit.hpp"

namespace qnoise {

/// Bohr energy and the two independent noise densities (off-diagonal x,
/// diagonal y = xi1 - xi2).
struct NoiseModel {
  double eps{1.0};
  NoiseDensity mu_o = NoiseDensity::zero();
  NoiseDensity mu_d = NoiseDensity::zero();

  /// Throws DomainError unless eps > 0 and the diagonal support lies inside
  /// (-eps, eps).
  void validate() const;
  std::string describe() const;
};

enum class AveragingMode { quadrature, monte_carlo };

std::string to_string(AveragingMode m);
AveragingMode averaging_mode_from_string(const std::string& name);

struct QuadratureSpec {
  int base_order{12};
  double panels_per_unit_phase{0.5};
  double tolerance{1e-8};              // time-dependent quantities
  double coefficient_tolerance{1e-9};  // alpha, beta, gamma
  AveragingMode mode{AveragingMode::quadrature};
  std::size_t samples{1000000};        // monte_carlo only
  std::uint64_t seed{0};               // monte_carlo only
  int threads{1};

  /// Throws ConfigError naming the offending field.
  void validate() const;
};

struct FinalStateCoeffs {
  double alpha{0.0};
  double beta{1.0};
  double gamma{0.0};
  /// Order-refinement difference (quadrature) or largest standard error (MC).
  double error_estimate{0.0};
};

struct AveragedState {
  DensityMatrix rho;
  double error_estimate{0.0};
  /// rho11, Re rho12, Im rho12; zero in quadrature mode.
  std::array<double, 3> standard_error{};
};

/// E[rho(t)] - rho_bar, the noise average of the oscillating terms.
struct OscillatoryPart {
  double rho11{0.0};
  complex rho12{0.0, 0.0};

  double frobenius() const noexcept;
};

/// Assembles the oscillating part from the five spectral channels.
OscillatoryPart oscillatory_part(const PhaseSpectrum::Channels& J, const DensityMatrix& rho0);

/// Throws ConvergenceError if the order-refinement estimate exceeds
/// spec.tolerance.
AveragedState expected_rho(const NoiseModel& model, const DensityMatrix& rho0, double t,
                           const QuadratureSpec& spec);

/// expected_rho over a grid, sharing one spectrum (quadrature) or one
/// sample set (monte_carlo) across all times.
std::vector<AveragedState> expected_rho_series(const NoiseModel& model, const DensityMatrix& rho0,
                                               const std::vector<double>& times,
                                               const QuadratureSpec& spec);

/// Throws ConvergenceError when alpha, beta, gamma do not settle to
/// spec.coefficient_tolerance under panel doubling.
FinalStateCoeffs final_state_coeffs(const NoiseModel& model, const QuadratureSpec& spec);

/// rho_bar11 = alpha + beta rho11 - 2 gamma Re rho12,
/// rho_bar12 = gamma (1 - 2 rho11) + 2 alpha Re rho12.
/// Throws DomainError when the result is not positive within `tol`.
DensityMatrix final_state(const FinalStateCoeffs& c, const DensityMatrix& rho0, double tol = 1e-9);

/// Frobenius distance of E[rho(t)] to rho_bar for each time in `times`.
DecaySeries deviation_series(const NoiseModel& model, const DensityMatrix& rho0,
                             const std::vector<double>& times, const QuadratureSpec& spec);

}  // namespace qnoise
