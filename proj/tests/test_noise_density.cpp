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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qnoise/analysis.hpp"
#include "qnoise/errors.hpp"
#include "qnoise/noise_density.hpp"
#include "qnoise/quadrature.hpp"

namespace qnoise {
namespace {

std::vector<NoiseDensity> test_matrix() {
  return {NoiseDensity::poly_bump(0, 1.0),       NoiseDensity::poly_bump(1, 1.0),
          NoiseDensity::poly_bump(2, 0.3),       NoiseDensity::poly_bump(3, 0.4),
          NoiseDensity::smooth_bump(0.5),        NoiseDensity::ir_poly_bump(1, 1, 1.0),
          NoiseDensity::ir_poly_bump(3, 2, 0.2), NoiseDensity::shifted_bump(7.0, 2.0, 2),
          NoiseDensity::shifted_bump(11.0, 1.0, 0), NoiseDensity::mirrored_bump(10.0, 1.0, 2),
          NoiseDensity::mirrored_bump(1.0, 1.0, 2)};
}

// Composite midpoint rule over each smooth piece. Crude, independent of the
// adaptive rule used for normalization, and never touches the support edge
// where pdf is 0 by convention.
double midpoint(const NoiseDensity& d, auto&& f) {
  double total = 0.0;
  for (const Interval& iv : d.smooth_pieces()) {
    const int n = 40000;
    const double h = iv.length() / n;
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += f(iv.lo + (i + 0.5) * h);
    total += s * h;
  }
  return total;
}

DecaySeries fourier_series(const NoiseDensity& d) {
  DecaySeries s;
  s.times = log_time_grid(10.0, 1e4, 40);
  for (double t : s.times) s.deviations.push_back(std::abs(fourier(d, t)));
  s.error_estimates.assign(s.size(), 0.0);
  s.dev_rho11 = s.dev_re_rho12 = s.dev_im_rho12 = s.deviations;
  return s;
}

TEST(Pdf, UniformExample) {
  const NoiseDensity d = NoiseDensity::poly_bump(0, 1.0);
  EXPECT_NEAR(d.pdf(0.0), 0.5, 1e-12);
  EXPECT_EQ(d.pdf(2.0), 0.0);
  EXPECT_EQ(d.pdf(-2.0), 0.0);
}

TEST(Pdf, ParabolicExample) {
  const NoiseDensity d = NoiseDensity::poly_bump(1, 1.0);
  for (double u = -0.99; u < 1.0; u += 0.03) EXPECT_NEAR(d.pdf(u), 0.75 * (1.0 - u * u), 1e-12);
  EXPECT_EQ(d.pdf(1.0), 0.0);
}

TEST(Pdf, InfraredZero) {
  EXPECT_EQ(NoiseDensity::ir_poly_bump(1, 1, 1.0).pdf(0.0), 0.0);
  EXPECT_EQ(NoiseDensity::ir_poly_bump(1, 1, 1.0).infrared_order(), 1);
  EXPECT_GT(NoiseDensity::poly_bump(2, 1.0).pdf(0.0), 0.0);
}

TEST(Pdf, NormalizedNonnegativeAndSupported) {
  for (const NoiseDensity& d : test_matrix()) {
    SCOPED_TRACE(d.describe());
    EXPECT_NEAR(midpoint(d, [&](double u) { return d.pdf(u); }), 1.0, 1e-7);
    double lo = d.support().front().lo, hi = d.support().back().hi;
    for (double u = lo - 1.0; u <= hi + 1.0; u += (hi - lo + 2.0) / 997.0) {
      ASSERT_GE(d.pdf(u), 0.0);
      const bool inside = std::any_of(d.support().begin(), d.support().end(),
                                      [&](const Interval& iv) { return u > iv.lo && u < iv.hi; });
      if (!inside) {
        ASSERT_EQ(d.pdf(u), 0.0) << u;
      }
    }
  }
}

TEST(Pdf, RejectsBadParameters) {
  EXPECT_THROW(NoiseDensity::poly_bump(-1, 1.0), std::invalid_argument);
  EXPECT_THROW(NoiseDensity::poly_bump(2, 0.0), std::invalid_argument);
  EXPECT_THROW(NoiseDensity::smooth_bump(-1.0), std::invalid_argument);
  EXPECT_THROW(NoiseDensity::mirrored_bump(0.5, 1.0, 2), std::invalid_argument);
}

TEST(Sample, ZeroFamilyIsExactlyZero) {
  for (double v : sample(NoiseDensity::zero(), 9, 1000)) ASSERT_EQ(v, 0.0);
}

TEST(Sample, UniformMeanWithinClt) {
  const std::size_t n = 100000;
  const auto v = sample(NoiseDensity::poly_bump(0, 1.0), 17, n);
  const double mean = std::accumulate(v.begin(), v.end(), 0.0) / n;
  EXPECT_LT(std::abs(mean), 3.0 / std::sqrt(12.0 * n));
}

TEST(Sample, ShiftedSupportContainment) {
  for (double v : sample(NoiseDensity::shifted_bump(7.0, 2.0, 2), 3, 100000)) {
    ASSERT_GT(v, 5.0);
    ASSERT_LT(v, 9.0);
  }
}

TEST(Sample, KolmogorovSmirnov) {
  const std::size_t n = 100000;
  auto v = sample(NoiseDensity::poly_bump(1, 1.0), 5, n);
  std::sort(v.begin(), v.end());
  double ks = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double u = v[i];
    const double F = 0.5 + 0.75 * (u - u * u * u / 3.0);
    ks = std::max({ks, std::abs(F - double(i) / n), std::abs(F - double(i + 1) / n)});
  }
  EXPECT_LT(ks, 2.0 / std::sqrt(double(n)));
}

TEST(Sample, KolmogorovSmirnovAgainstNumericCdf) {
  for (const NoiseDensity& d : test_matrix()) {
    SCOPED_TRACE(d.describe());
    const std::size_t n = 20000;
    auto v = sample(d, 77, n);
    std::sort(v.begin(), v.end());
    // CDF at the sample points by trapezoid on the pdf.
    const double lo = d.support().front().lo;
    double F = 0.0, prev_u = lo, prev_p = d.pdf(lo), ks = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const int steps = 64;
      const double h = (v[i] - prev_u) / steps;
      for (int k = 1; k <= steps; ++k) {
        const double p = d.pdf(prev_u + k * h);
        F += 0.5 * h * (prev_p + p);
        prev_p = p;
      }
      prev_u = v[i];
      ks = std::max({ks, std::abs(F - double(i) / n), std::abs(F - double(i + 1) / n)});
    }
    EXPECT_LT(ks, 2.0 / std::sqrt(double(n)));
  }
}

TEST(Sample, ReproducibleAndStreamsDiffer) {
  const NoiseDensity d = NoiseDensity::poly_bump(2, 0.3);
  EXPECT_EQ(sample(d, 42, 500), sample(d, 42, 500));
  EXPECT_NE(sample(d, 42, 500, 1), sample(d, 42, 500, 2));
  EXPECT_NE(sample(d, 42, 500), sample(d, 43, 500));
}

TEST(Fourier, NormalizationAndBound) {
  for (const NoiseDensity& d : test_matrix()) {
    EXPECT_NEAR(std::abs(fourier(d, 0.0) - 1.0), 0.0, 1e-12) << d.describe();
    for (double t : {0.3, 3.0, 30.0, 300.0}) EXPECT_LE(std::abs(fourier(d, t)), 1.0 + 1e-12);
  }
  EXPECT_EQ(fourier(NoiseDensity::zero(), 123.0), std::complex<double>(1.0, 0.0));
}

TEST(Fourier, ParabolicClosedForm) {
  const NoiseDensity d = NoiseDensity::poly_bump(1, 1.0);
  for (double t : {0.1, 1.0, 2.5, 10.0, 77.7, 1000.0}) {
    const double ref = 3.0 * (std::sin(t) - t * std::cos(t)) / (t * t * t);
    EXPECT_NEAR(std::abs(fourier(d, t) - ref), 0.0, 1e-12) << t;
  }
}

TEST(Fourier, ShiftedIsPhaseRotatedCentered) {
  const auto a = NoiseDensity::shifted_bump(7.0, 2.0, 2);
  const auto b = NoiseDensity::poly_bump(2, 2.0);
  for (double t : {0.5, 5.0, 50.0})
    EXPECT_NEAR(std::abs(fourier(a, t) - std::polar(1.0, -7.0 * t) * fourier(b, t)), 0.0, 1e-12);
}

TEST(Fourier, EvenDensitiesAreReal) {
  for (const NoiseDensity& d : test_matrix()) {
    if (!d.is_even()) continue;
    for (double t : {0.7, 7.0, 700.0}) EXPECT_LT(std::abs(fourier(d, t).imag()), 1e-12);
  }
}

TEST(Fourier, PolynomialDecayExponent) {
  for (int n : {1, 2, 3}) {
    const RateFit f = fit_power_law(fourier_series(NoiseDensity::poly_bump(n, 1.0)));
    EXPECT_NEAR(f.exponent, n + 1.0, 0.3) << n;
  }
}

TEST(Fourier, SmoothBumpExponentKeepsGrowing) {
  const NoiseDensity d = NoiseDensity::smooth_bump(1.0);
  DecaySeries s;
  s.times = linear_time_grid(1.0, 400.0, 4000);
  for (double t : s.times) s.deviations.push_back(std::abs(fourier(d, t)));
  s.error_estimates.assign(s.size(), 0.0);
  s.dev_rho11 = s.dev_re_rho12 = s.dev_im_rho12 = s.deviations;
  double prev = 0.0;
  for (FitWindow w : {FitWindow{10, 40}, FitWindow{40, 160}, FitWindow{100, 400}}) {
    const double e = fit_power_law(s, w).exponent;
    EXPECT_GT(e, prev + 0.5) << w.t_min;
    prev = e;
  }
}

TEST(Moments, Examples) {
  EXPECT_NEAR(moment(NoiseDensity::poly_bump(0, 1.0), 2), 1.0 / 3.0, 1e-12);
  EXPECT_NEAR(moment(NoiseDensity::poly_bump(1, 1.0), 2), 0.2, 1e-12);
  for (const NoiseDensity& d : test_matrix()) {
    if (d.is_even()) {
      EXPECT_NEAR(moment(d, 1), 0.0, 1e-14) << d.describe();
      EXPECT_NEAR(moment(d, 3), 0.0, 1e-14) << d.describe();
    }
    EXPECT_NEAR(moment(d, 0), 1.0, 1e-10);
  }
  for (int m : {1, 2, 5}) EXPECT_EQ(moment(NoiseDensity::zero(), m), 0.0);
  EXPECT_EQ(scaled_inverse_moment(NoiseDensity::zero(), 1.0, 3), 1.0);
}

TEST(Moments, ShiftedMean) {
  EXPECT_NEAR(moment(NoiseDensity::shifted_bump(7.0, 2.0, 2), 1), 7.0, 1e-10);
  EXPECT_NEAR(moment(NoiseDensity::mirrored_bump(10.0, 1.0, 2), 2),
              moment(NoiseDensity::shifted_bump(10.0, 1.0, 2), 2), 1e-9);
}

TEST(Moments, ScaledAndInverse) {
  const NoiseDensity d = NoiseDensity::poly_bump(2, 0.3);
  const double eps = 1.0;
  const double ref = midpoint(d, [&](double y) { return d.pdf(y) / ((1 + y / eps) * (1 + y / eps)); });
  EXPECT_NEAR(scaled_inverse_moment(d, eps, 2), ref, 1e-9);
  EXPECT_NEAR(scaled_power_moment(d, eps, -2), ref, 1e-9);
  EXPECT_NEAR(scaled_power_moment(d, eps, 2), 1.0 + moment(d, 2), 1e-12);

  const NoiseDensity s = NoiseDensity::shifted_bump(10.0, 1.0, 2);
  const double inv2 = midpoint(s, [&](double x) { return s.pdf(x) / (x * x); });
  EXPECT_NEAR(inverse_power_moment(s, 1.0, 2), inv2, 1e-9);
}

TEST(Moments, InversePowerNeedsSupportAwayFromZero) {
  EXPECT_THROW(inverse_power_moment(NoiseDensity::poly_bump(2, 0.3), 1.0, 1), DomainError);
  EXPECT_THROW(inverse_power_moment(NoiseDensity::mirrored_bump(1.0, 1.0, 2), 1.0, 2), DomainError);
  EXPECT_THROW(inverse_power_moment(NoiseDensity::zero(), 1.0, 1), DomainError);
  EXPECT_NO_THROW(inverse_power_moment(NoiseDensity::mirrored_bump(3.0, 1.0, 2), 1.0, 2));
}

TEST(Moments, SmoothnessAndOrders) {
  EXPECT_EQ(NoiseDensity::poly_bump(0, 1.0).smoothness(), -1);
  EXPECT_EQ(NoiseDensity::poly_bump(3, 1.0).smoothness(), 2);
  EXPECT_EQ(NoiseDensity::smooth_bump(1.0).smoothness(), NoiseDensity::kInfinite);
  EXPECT_EQ(NoiseDensity::ir_poly_bump(3, 2, 1.0).infrared_order(), 3);
  EXPECT_EQ(NoiseDensity::shifted_bump(7.0, 2.0, 2).infrared_order(), NoiseDensity::kInfinite);
  EXPECT_NEAR(NoiseDensity::shifted_bump(7.0, 2.0, 2).min_abs(), 5.0, 1e-15);
  EXPECT_NEAR(NoiseDensity::shifted_bump(7.0, 2.0, 2).max_abs(), 9.0, 1e-15);
}

}  // namespace
}  // namespace qnoise
