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
#include <cstdint>
#include <limits>
#include <memory>
#include <string>
#include <vector>

namespace qnoise {

enum class DensityFamily {
  zero,           // point mass at 0
  poly_bump,      // (1 - (u/eta)^2)_+^n
  smooth_bump,    // exp(-1 / (1 - (u/eta)^2)) on |u| < eta
  ir_poly_bump,   // |u/eta|^k (1 - (u/eta)^2)_+^n
  shifted_bump,   // (1 - ((u - c)/w)^2)_+^n
  mirrored_bump,  // even symmetrization of shifted_bump(c, w, n)
};

std::string to_string(DensityFamily f);
DensityFamily density_family_from_string(const std::string& name);

struct Interval {
  double lo{0.0};
  double hi{0.0};

  double length() const noexcept { return hi - lo; }
  double mid() const noexcept { return 0.5 * (lo + hi); }
};

/// Compactly supported probability density of one noise variable.
///
/// Immutable after construction; copies share the sampling table. The
/// normalization constant is computed by adaptive quadrature when the
/// object is built.
class NoiseDensity {
 public:
  static constexpr int kInfinite = std::numeric_limits<int>::max();

  static NoiseDensity zero();
  static NoiseDensity poly_bump(int n, double half_width);
  static NoiseDensity smooth_bump(double half_width);
  static NoiseDensity ir_poly_bump(int k, int n, double half_width);
  static NoiseDensity shifted_bump(double center, double half_width, int n);
  static NoiseDensity mirrored_bump(double center, double half_width, int n);

  DensityFamily family() const noexcept { return family_; }
  int n() const noexcept { return n_; }
  int k() const noexcept { return k_; }
  double center() const noexcept { return center_; }
  double half_width() const noexcept { return half_width_; }

  bool is_point_mass() const noexcept { return family_ == DensityFamily::zero; }
  bool is_even() const noexcept;

  /// Zero outside the support (and on its boundary); 0 everywhere for the
  /// point mass.
  double pdf(double u) const noexcept;

  /// Disjoint closed intervals whose union is the support.
  const std::vector<Interval>& support() const noexcept { return support_; }
  /// Sorted points where pdf is not analytic: support edges and interior kinks.
  const std::vector<double>& breakpoints() const noexcept { return breakpoints_; }
  /// Intervals between consecutive breakpoints on which pdf is analytic and
  /// positive in the interior.
  const std::vector<Interval>& smooth_pieces() const noexcept { return pieces_; }

  /// sup |u| over the support (the half-width eta for centered families).
  double max_abs() const noexcept;
  /// inf |u| over the support (mu_min in the strong-noise regime).
  double min_abs() const noexcept;

  /// Largest k with pdf in C^k; -1 if discontinuous, kInfinite if smooth.
  int smoothness() const noexcept;
  /// Order of the zero of pdf at u = 0: 0 if pdf(0) > 0, kInfinite if pdf
  /// vanishes on a neighbourhood of 0.
  int infrared_order() const noexcept;

  double normalization() const noexcept { return norm_; }
  std::string describe() const;

  /// Inverse CDF from the precomputed monotone table; p in (0, 1).
  double inverse_cdf(double p) const;

  struct CdfTable;

 private:
  NoiseDensity() = default;
  void finalize();
  double shape(double u) const noexcept;

  DensityFamily family_{DensityFamily::zero};
  int n_{0};
  int k_{0};
  double center_{0.0};
  double half_width_{0.0};
  double norm_{1.0};
  std::vector<Interval> support_;
  std::vector<double> breakpoints_;
  std::vector<Interval> pieces_;
  std::shared_ptr<const CdfTable> table_;
};

/// `count` independent draws. Reproducible for fixed (seed, stream); distinct
/// streams give independent sequences for the same seed.
std::vector<double> sample(const NoiseDensity& d, std::uint64_t seed, std::size_t count,
                           std::uint64_t stream = 0);

/// Characteristic function int exp(-i t u) pdf(u) du.
std::complex<double> fourier(const NoiseDensity& d, double t);

/// E[u^m].
double moment(const NoiseDensity& d, int m);
/// E[(1 + y/eps)^p] for any integer p (negative p requires support > -eps).
double scaled_power_moment(const NoiseDensity& d, double eps, int p);
/// E[(1 + y/eps)^(-m)].
double scaled_inverse_moment(const NoiseDensity& d, double eps, int m);
/// E[(eps/x)^m]; throws DomainError if 0 lies in the closed support.
double inverse_power_moment(const NoiseDensity& d, double eps, int m);

}  // namespace qnoise
