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
#include <vector>

#include "qnoise/noise_density.hpp"

namespace qnoise {

/// Quadrature representation of the joint law of the Bohr frequency Phi and
/// the mixing angle theta under the product density mu_o(x) mu_d(y):
///
///   J_k(t) = E[exp(-i t Phi) R^k / (1 + R^2)^2],   k = 0..4,
///
/// with R = tan(theta / 2), so R^k / (1 + R^2)^2 = sin^k(theta/2) cos^(4-k)(theta/2).
/// The amplitudes h, g1, g2 and the stationary coefficient functions are all
/// combinations of these five channels.
///
/// Nodes live on the frequency axis (polar coordinates around the origin of
/// the (eps + y, 2x) plane). Each node is stored as panel start plus offset so
/// that the phase t * (start + offset) keeps full absolute accuracy for
/// large t.
class PhaseSpectrum {
 public:
  static constexpr int kChannels = 5;
  using Channels = std::array<std::complex<double>, kChannels>;

  struct Options {
    int order{12};                      // Gauss-Legendre nodes per panel
    double t_max{0.0};                  // largest time the grid must resolve
    double panels_per_unit_phase{0.5};  // panels per radian of t * Phi span
    int min_panels{4};                  // per smooth frequency interval
    int angular_panels{2};              // sub-panels of each angular interval
  };

  static PhaseSpectrum build(double eps, const NoiseDensity& mu_o, const NoiseDensity& mu_d,
                             const Options& opt);

  /// J_0..J_4 at time t. Accurate for |t| <= t_max of the build.
  Channels transform(double t) const;

  std::size_t node_count() const noexcept { return offsets_.size(); }
  double t_max() const noexcept { return t_max_; }

  struct Panel {
    double start;
    std::size_t first;
    std::size_t count;
  };

 private:
  void add_node(double offset, const std::array<double, kChannels>& w);

  std::vector<Panel> panels_;
  std::vector<double> offsets_;
  std::vector<std::array<double, kChannels>> weights_;
  double t_max_{0.0};

  friend class SpectrumBuilder;
};

}  // namespace qnoise
