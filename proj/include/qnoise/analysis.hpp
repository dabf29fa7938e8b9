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

#include <limits>
#include <stdexcept>
#include <string>

#include "qnoise/averaging.hpp"
#include "qnoise/decay_series.hpp"

namespace qnoise {

struct FitWindow {
  double t_min{1e2};
  double t_max{1e4};
};

struct Envelope {
  DecaySeries series;
  /// True when fewer than 5 strict local maxima were found and `series` is
  /// the raw input.
  bool fallback{false};
};

/// Strict interior local maxima of the deviation column. Requires at least
/// 20 points (std::invalid_argument otherwise).
Envelope envelope(const DecaySeries& s);

struct RateFit {
  double exponent{0.0};  // positive for decay: d ~ t^(-exponent)
  double intercept{0.0};
  double r_squared{0.0};
  double exponent_stderr{0.0};
  FitWindow window;
  int n_envelope_points{0};
  bool envelope_fallback{false};
};

/// Thrown when deviations inside the window are not 10x above their error
/// estimates. `usable()` is the leading part of the window that is clean;
/// its t_max is below its t_min if nothing is usable.
class FloorReached : public std::runtime_error {
 public:
  FloorReached(const std::string& what, FitWindow usable)
      : std::runtime_error(what), usable_(usable) {}
  FitWindow usable() const noexcept { return usable_; }

 private:
  FitWindow usable_;
};

/// Least-squares slope of log(deviation) against log(t) over the envelope
/// points inside the window.
RateFit fit_power_law(const DecaySeries& s, FitWindow window = {});

enum class Regime { weak, intermediate, strong };
std::string to_string(Regime r);

/// nu1 = (eta_o / eps) / (1 - eta_d / eps), eta the largest |value| in the support.
double weak_parameter(const NoiseModel& m);
/// nu2 = eps / min |x| over the off-diagonal support (infinite if it contains 0).
double strong_parameter(const NoiseModel& m);
/// Weak if nu1 < 1/4, strong if nu2 < 1/4.
Regime classify(const NoiseModel& m);

struct RegimeReport {
  Regime regime{Regime::intermediate};
  double nu1{0.0};
  double nu2{std::numeric_limits<double>::infinity()};
  FinalStateCoeffs computed;
  bool has_expansion{false};
  double alpha_lead{0.0};
  double beta_lead{0.0};
  double gamma_lead{0.0};
  double alpha_residual{0.0};  // |computed - lead|
  double beta_residual{0.0};
  double gamma_residual{0.0};
};

/// Computed coefficients against the leading terms of the small-parameter
/// expansions. Intermediate models get no expansion.
RegimeReport regime_report(const NoiseModel& m, const QuadratureSpec& spec);
/// Same, reusing already computed coefficients.
RegimeReport regime_report(const NoiseModel& m, const FinalStateCoeffs& computed);

struct DephasingDistances {
  double energy_basis{0.0};
  double delocalized_basis{0.0};
};

/// Frobenius distance from rho_bar to rho0 fully dephased in the energy
/// basis and in the delocalized basis.
DephasingDistances dephasing_distance(const FinalStateCoeffs& c, const DensityMatrix& rho0);
DephasingDistances dephasing_distance(const NoiseModel& m, const DensityMatrix& rho0,
                                      const QuadratureSpec& spec);

}  // namespace qnoise
