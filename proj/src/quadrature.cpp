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

#include "qnoise/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qnoise::quad {

Rule gauss_legendre(int order) {
  if (order < 1) throw std::invalid_argument("gauss_legendre: order must be >= 1");
  const int n = order;
  Rule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) {
        // one more pass to refresh dp at the converged node
        p0 = 1.0;
        p1 = x;
        for (int k = 2; k <= n; ++k) {
          const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
          p0 = p1;
          p1 = pk;
        }
        if (n == 1) p0 = 1.0;
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        break;
      }
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    r.nodes[i] = -x;
    r.nodes[n - 1 - i] = x;
    r.weights[i] = r.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) r.nodes[n / 2] = 0.0;
  return r;
}

double integrate_composite(const std::function<double(double)>& f, double a, double b,
                           int panels, const Rule& rule) {
  if (panels < 1) throw std::invalid_argument("integrate_composite: panels must be >= 1");
  const double h = (b - a) / panels;
  double sum = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * h;
    double s = 0.0;
    for (int j = 0; j < rule.order(); ++j) s += rule.weights[j] * f(lo + 0.5 * h * (rule.nodes[j] + 1.0));
    sum += 0.5 * h * s;
  }
  return sum;
}

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double rel_tol) {
  if (!(b > a)) return 0.0;
  double err = 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, a, b, 20, rel_tol, &err);
}

std::complex<double> expi_neg(double t, double a) noexcept {
  const double hi = t * a;
  const double lo = std::fma(t, a, -hi);
  const double c = std::cos(hi);
  const double s = std::sin(hi);
  // exp(-i (hi + lo)) = exp(-i hi) (1 - i lo) + O(lo^2), |lo| <= ulp(hi) / 2
  const std::complex<double> base{c, -s};
  return base * std::complex<double>{1.0, -lo};
}

}  // namespace qnoise::quad
