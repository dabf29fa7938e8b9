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

#include <complex>
#include <functional>
#include <vector>

namespace qnoise::quad {

/// Gauss-Legendre rule on [-1, 1], nodes ascending.
struct Rule {
  std::vector<double> nodes;
  std::vector<double> weights;

  int order() const noexcept { return static_cast<int>(nodes.size()); }
};

Rule gauss_legendre(int order);

/// Composite Gauss-Legendre over [a, b] split into `panels` equal panels.
double integrate_composite(const std::function<double(double)>& f, double a, double b,
                           int panels, const Rule& rule);

/// Adaptive 15-point Gauss-Kronrod; `rel_tol` is relative to the integral.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double rel_tol = 1e-13);

/// exp(-i t a). The product t * a is split error-free (fma) before the
/// trigonometric evaluation so that the phase keeps full absolute accuracy
/// for |t a| >> 1.
std::complex<double> expi_neg(double t, double a) noexcept;

}  // namespace qnoise::quad
