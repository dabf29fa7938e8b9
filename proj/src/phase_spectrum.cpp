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

#include "qnoise/phase_spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qnoise/quadrature.hpp"

namespace qnoise {

namespace {

using ChannelValues = std::array<double, PhaseSpectrum::kChannels>;

// Geometric grading toward both ends of every interval: ratio and depth.
constexpr double kGradeRatio = 0.25;
constexpr int kGradeLevels = 22;

ChannelValues half_angle_basis(double theta) noexcept {
  const double s = std::sin(0.5 * theta);
  const double c = std::cos(0.5 * theta);
  const double s2 = s * s;
  const double c2 = c * c;
  return {c2 * c2, s * c * c2, s2 * c2, s * s2 * c, s2 * s2};
}

// acos(s / r) for 0 < s <= r without the cancellation of acos near 1.
double acos_ratio(double s, double r) noexcept {
  return 2.0 * std::asin(std::sqrt(std::max(0.0, (r - s) / (2.0 * r))));
}

double asin_clamped(double v) noexcept { return std::asin(std::clamp(v, -1.0, 1.0)); }

std::vector<double> graded_mesh(double a, double b, int n) {
  n = std::max(n, 2);
  const double h = (b - a) / n;
  std::vector<double> pts;
  pts.reserve(static_cast<std::size_t>(n + 2 * kGradeLevels + 1));
  pts.push_back(a);
  for (int j = kGradeLevels; j >= 1; --j) pts.push_back(a + h * std::pow(kGradeRatio, j));
  for (int i = 1; i < n; ++i) pts.push_back(a + h * i);
  for (int j = 1; j <= kGradeLevels; ++j) pts.push_back(b - h * std::pow(kGradeRatio, j));
  pts.push_back(b);
  return pts;
}

int panel_count(const PhaseSpectrum::Options& opt, double phase_span, int floor_count) {
  const double n = std::ceil(opt.panels_per_unit_phase * opt.t_max * phase_span);
  return std::max(floor_count, static_cast<int>(std::min(n, 1e8)));
}

}  // namespace

class SpectrumBuilder {
 public:
  SpectrumBuilder(PhaseSpectrum& s, const PhaseSpectrum::Options& opt)
      : s_(s), opt_(opt), rule_(quad::gauss_legendre(opt.order)),
        theta_rule_(quad::gauss_legendre(opt.order + 8)) {}

  // Frequency-axis interval [a, b]; g(r) returns channel densities per unit r.
  template <class G>
  void add_frequency_interval(double a, double b, G&& g) {
    if (!(b > a)) return;
    const auto mesh = graded_mesh(a, b, panel_count(opt_, b - a, opt_.min_panels));
    for (std::size_t p = 0; p + 1 < mesh.size(); ++p) {
      const double lo = mesh[p];
      const double hw = 0.5 * (mesh[p + 1] - lo);
      if (!(hw > 0.0)) continue;
      open_panel(lo);
      for (int j = 0; j < rule_.order(); ++j) {
        const double off = hw * (rule_.nodes[j] + 1.0);
        ChannelValues v = g(lo + off);
        for (auto& c : v) c *= hw * rule_.weights[j];
        s_.add_node(off, v);
      }
    }
  }

  // Pure off-diagonal-noise case: integrate in x with phase
  // Phi(x) = sqrt(eps^2 + 4 x^2) = eps + 4 x^2 / (eps + Phi).
  void add_offdiagonal_interval(double eps, double xa, double xb, const NoiseDensity& mu_o) {
    if (!(xb > xa)) return;
    const double m = std::max(std::abs(xa), std::abs(xb));
    const double slope = 4.0 * m / std::hypot(eps, 2.0 * m);
    const auto mesh = graded_mesh(xa, xb, panel_count(opt_, slope * (xb - xa), opt_.min_panels));
    for (std::size_t p = 0; p + 1 < mesh.size(); ++p) {
      const double lo = mesh[p];
      const double hw = 0.5 * (mesh[p + 1] - lo);
      if (!(hw > 0.0)) continue;
      open_panel(eps);
      for (int j = 0; j < rule_.order(); ++j) {
        const double x = lo + hw * (rule_.nodes[j] + 1.0);
        const double phi = std::hypot(eps, 2.0 * x);
        ChannelValues v = half_angle_basis(std::atan2(2.0 * x, eps));
        const double w = hw * rule_.weights[j] * mu_o.pdf(x);
        for (auto& c : v) c *= w;
        s_.add_node(4.0 * x * x / (eps + phi), v);
      }
    }
  }

  // Angular integral at radius r over the part of the rectangle
  // [s_lo, s_hi] x [u_lo, u_hi] (s = eps + y, u = 2x) crossed by the circle.
  ChannelValues angular(double r, double eps, double s_lo, double s_hi, double u_lo, double u_hi,
                        const NoiseDensity& mu_o, const NoiseDensity& mu_d) const {
    ChannelValues out{};
    if (!(r > s_lo)) return out;
    const double B = acos_ratio(s_lo, r);
    const double A = r <= s_hi ? 0.0 : acos_ratio(s_hi, r);
    const double C = asin_clamped(u_lo / r);
    const double E = asin_clamped(u_hi / r);
    auto integrate = [&](double lo, double hi) {
      if (!(hi > lo)) return;
      const int kSub = std::max(1, opt_.angular_panels);
      const double hw = 0.5 * (hi - lo) / kSub;
      for (int p = 0; p < kSub; ++p) {
        const double base = lo + 2.0 * hw * p;
        for (int j = 0; j < theta_rule_.order(); ++j) {
          const double th = base + hw * (theta_rule_.nodes[j] + 1.0);
          const double dens =
              mu_d.pdf(r * std::cos(th) - eps) * mu_o.pdf(0.5 * r * std::sin(th));
          if (dens == 0.0) continue;
          const double w = hw * theta_rule_.weights[j] * 0.5 * r * dens;
          const ChannelValues b = half_angle_basis(th);
          for (int k = 0; k < PhaseSpectrum::kChannels; ++k) out[k] += w * b[k];
        }
      }
    };
    if (A == 0.0) {
      integrate(std::max(-B, C), std::min(B, E));
    } else {
      integrate(std::max(-B, C), std::min(-A, E));
      integrate(std::max(A, C), std::min(B, E));
    }
    return out;
  }

 private:
  void open_panel(double start) {
    s_.panels_.push_back({start, s_.offsets_.size(), 0});
  }

  PhaseSpectrum& s_;
  const PhaseSpectrum::Options& opt_;
  quad::Rule rule_;
  quad::Rule theta_rule_;
};

void PhaseSpectrum::add_node(double offset, const std::array<double, kChannels>& w) {
  offsets_.push_back(offset);
  weights_.push_back(w);
  panels_.back().count += 1;
}

PhaseSpectrum PhaseSpectrum::build(double eps, const NoiseDensity& mu_o, const NoiseDensity& mu_d,
                                   const Options& opt) {
  if (opt.order < 4) throw std::invalid_argument("PhaseSpectrum: order must be >= 4");
  PhaseSpectrum s;
  s.t_max_ = opt.t_max;
  SpectrumBuilder b(s, opt);

  if (mu_o.is_point_mass() && mu_d.is_point_mass()) {
    s.panels_.push_back({eps, 0, 0});
    s.add_node(0.0, {1.0, 0.0, 0.0, 0.0, 0.0});
    return s;
  }

  if (mu_o.is_point_mass()) {
    for (const auto& pd : mu_d.smooth_pieces()) {
      b.add_frequency_interval(eps + pd.lo, eps + pd.hi, [&](double r) {
        return ChannelValues{mu_d.pdf(r - eps), 0.0, 0.0, 0.0, 0.0};
      });
    }
    return s;
  }

  if (mu_d.is_point_mass()) {
    for (const auto& po : mu_o.smooth_pieces()) {
      if (po.lo < 0.0 && po.hi > 0.0) {
        b.add_offdiagonal_interval(eps, po.lo, 0.0, mu_o);
        b.add_offdiagonal_interval(eps, 0.0, po.hi, mu_o);
      } else {
        b.add_offdiagonal_interval(eps, po.lo, po.hi, mu_o);
      }
    }
    return s;
  }

  for (const auto& pd : mu_d.smooth_pieces()) {
    const double s_lo = eps + pd.lo;
    const double s_hi = eps + pd.hi;
    for (const auto& po : mu_o.smooth_pieces()) {
      const double u_lo = 2.0 * po.lo;
      const double u_hi = 2.0 * po.hi;
      const double u_near = u_lo > 0.0 ? u_lo : (u_hi < 0.0 ? -u_hi : 0.0);
      const double u_far = std::max(std::abs(u_lo), std::abs(u_hi));
      const double r_min = std::hypot(s_lo, u_near);
      const double r_max = std::hypot(s_hi, u_far);

      std::vector<double> cuts = {r_min, r_max};
      for (double sv : {s_lo, s_hi}) {
        for (double uv : {u_lo, u_hi}) cuts.push_back(std::hypot(sv, uv));
        if (u_lo <= 0.0 && u_hi >= 0.0) cuts.push_back(sv);
      }
      std::sort(cuts.begin(), cuts.end());
      std::vector<double> knots;
      for (double c : cuts) {
        if (c < r_min || c > r_max) continue;
        if (!knots.empty() && c - knots.back() <= 1e-14 * r_max) continue;
        knots.push_back(c);
      }
      for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
        b.add_frequency_interval(knots[i], knots[i + 1], [&](double r) {
          return b.angular(r, eps, s_lo, s_hi, u_lo, u_hi, mu_o, mu_d);
        });
      }
    }
  }
  return s;
}

PhaseSpectrum::Channels PhaseSpectrum::transform(double t) const {
  Channels acc{};
  for (const auto& p : panels_) {
    Channels part{};
    for (std::size_t i = p.first; i < p.first + p.count; ++i) {
      const std::complex<double> e = quad::expi_neg(t, offsets_[i]);
      const auto& w = weights_[i];
      for (int k = 0; k < kChannels; ++k) part[k] += w[k] * e;
    }
    const std::complex<double> e0 = quad::expi_neg(t, p.start);
    for (int k = 0; k < kChannels; ++k) acc[k] += e0 * part[k];
  }
  return acc;
}

}  // namespace qnoise
