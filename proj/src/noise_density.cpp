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

#include "qnoise/noise_density.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include "qnoise/errors.hpp"
#include "qnoise/quadrature.hpp"

namespace qnoise {

namespace {

constexpr int kBaseCells = 4096;
constexpr int kMaxCells = 1 << 20;
constexpr double kTableTolerance = 1e-8;

double bump_power(double v, int n) noexcept {
  const double q = 1.0 - v * v;
  return n == 0 ? 1.0 : std::pow(q, n);
}

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Integral of pdf over each smooth piece, adaptive.
template <class F>
double integrate_pieces(const std::vector<Interval>& pieces, F&& f, double rel_tol = 1e-14) {
  double sum = 0.0;
  for (const auto& p : pieces) sum += quad::integrate_adaptive(f, p.lo, p.hi, rel_tol);
  return sum;
}

}  // namespace

std::string to_string(DensityFamily f) {
  switch (f) {
    case DensityFamily::zero: return "zero";
    case DensityFamily::poly_bump: return "poly_bump";
    case DensityFamily::smooth_bump: return "smooth_bump";
    case DensityFamily::ir_poly_bump: return "ir_poly_bump";
    case DensityFamily::shifted_bump: return "shifted_bump";
    case DensityFamily::mirrored_bump: return "mirrored_bump";
  }
  return "unknown";
}

DensityFamily density_family_from_string(const std::string& name) {
  for (auto f : {DensityFamily::zero, DensityFamily::poly_bump, DensityFamily::smooth_bump,
                 DensityFamily::ir_poly_bump, DensityFamily::shifted_bump,
                 DensityFamily::mirrored_bump}) {
    if (to_string(f) == name) return f;
  }
  throw std::invalid_argument("unknown density family '" + name + "'");
}

struct NoiseDensity::CdfTable {
  std::vector<double> nodes;
  std::vector<double> cdf;
};

NoiseDensity NoiseDensity::zero() {
  NoiseDensity d;
  d.family_ = DensityFamily::zero;
  d.support_ = {{0.0, 0.0}};
  d.breakpoints_ = {0.0};
  return d;
}

NoiseDensity NoiseDensity::poly_bump(int n, double half_width) {
  if (n < 0) throw std::invalid_argument("poly_bump: n must be >= 0");
  if (!(half_width > 0.0)) throw std::invalid_argument("poly_bump: half_width must be > 0");
  NoiseDensity d;
  d.family_ = DensityFamily::poly_bump;
  d.n_ = n;
  d.half_width_ = half_width;
  d.support_ = {{-half_width, half_width}};
  d.breakpoints_ = {-half_width, half_width};
  d.finalize();
  return d;
}

NoiseDensity NoiseDensity::smooth_bump(double half_width) {
  if (!(half_width > 0.0)) throw std::invalid_argument("smooth_bump: half_width must be > 0");
  NoiseDensity d;
  d.family_ = DensityFamily::smooth_bump;
  d.half_width_ = half_width;
  d.support_ = {{-half_width, half_width}};
  d.breakpoints_ = {-half_width, half_width};
  d.finalize();
  return d;
}

NoiseDensity NoiseDensity::ir_poly_bump(int k, int n, double half_width) {
  if (k < 1) throw std::invalid_argument("ir_poly_bump: k must be >= 1");
  if (n < 0) throw std::invalid_argument("ir_poly_bump: n must be >= 0");
  if (!(half_width > 0.0)) throw std::invalid_argument("ir_poly_bump: half_width must be > 0");
  NoiseDensity d;
  d.family_ = DensityFamily::ir_poly_bump;
  d.k_ = k;
  d.n_ = n;
  d.half_width_ = half_width;
  d.support_ = {{-half_width, half_width}};
  d.breakpoints_ = {-half_width, 0.0, half_width};
  d.finalize();
  return d;
}

NoiseDensity NoiseDensity::shifted_bump(double center, double half_width, int n) {
  if (n < 0) throw std::invalid_argument("shifted_bump: n must be >= 0");
  if (!(half_width > 0.0)) throw std::invalid_argument("shifted_bump: half_width must be > 0");
  NoiseDensity d;
  d.family_ = DensityFamily::shifted_bump;
  d.n_ = n;
  d.center_ = center;
  d.half_width_ = half_width;
  d.support_ = {{center - half_width, center + half_width}};
  d.breakpoints_ = {center - half_width, center + half_width};
  d.finalize();
  return d;
}

NoiseDensity NoiseDensity::mirrored_bump(double center, double half_width, int n) {
  if (n < 0) throw std::invalid_argument("mirrored_bump: n must be >= 0");
  if (!(half_width > 0.0)) throw std::invalid_argument("mirrored_bump: half_width must be > 0");
  if (!(center >= half_width)) {
    throw std::invalid_argument("mirrored_bump: center must be >= half_width");
  }
  NoiseDensity d;
  d.family_ = DensityFamily::mirrored_bump;
  d.n_ = n;
  d.center_ = center;
  d.half_width_ = half_width;
  if (center == half_width) {
    d.support_ = {{-2.0 * half_width, 2.0 * half_width}};
    d.breakpoints_ = {-2.0 * half_width, 0.0, 2.0 * half_width};
  } else {
    d.support_ = {{-center - half_width, -center + half_width},
                  {center - half_width, center + half_width}};
    d.breakpoints_ = {-center - half_width, -center + half_width, center - half_width,
                      center + half_width};
  }
  d.finalize();
  return d;
}

double NoiseDensity::shape(double u) const noexcept {
  switch (family_) {
    case DensityFamily::zero:
      return 0.0;
    case DensityFamily::poly_bump: {
      const double v = u / half_width_;
      return std::abs(v) < 1.0 ? bump_power(v, n_) : 0.0;
    }
    case DensityFamily::smooth_bump: {
      const double v = u / half_width_;
      return std::abs(v) < 1.0 ? std::exp(-1.0 / (1.0 - v * v)) : 0.0;
    }
    case DensityFamily::ir_poly_bump: {
      const double v = u / half_width_;
      return std::abs(v) < 1.0 ? std::pow(std::abs(v), k_) * bump_power(v, n_) : 0.0;
    }
    case DensityFamily::shifted_bump: {
      const double v = (u - center_) / half_width_;
      return std::abs(v) < 1.0 ? bump_power(v, n_) : 0.0;
    }
    case DensityFamily::mirrored_bump: {
      const double vp = (u - center_) / half_width_;
      const double vm = (u + center_) / half_width_;
      double s = 0.0;
      if (std::abs(vp) < 1.0) s += bump_power(vp, n_);
      if (std::abs(vm) < 1.0) s += bump_power(vm, n_);
      return 0.5 * s;
    }
  }
  return 0.0;
}

double NoiseDensity::pdf(double u) const noexcept { return shape(u) / norm_; }

void NoiseDensity::finalize() {
  pieces_.clear();
  for (std::size_t i = 0; i + 1 < breakpoints_.size(); ++i) {
    const Interval iv{breakpoints_[i], breakpoints_[i + 1]};
    if (iv.length() > 0.0 && shape(iv.mid()) > 0.0) pieces_.push_back(iv);
  }
  norm_ = 1.0;
  norm_ = integrate_pieces(pieces_, [this](double u) { return shape(u); });

  // Inverse-CDF table: cells distributed over the pieces proportionally to
  // their length, refined until linear interpolation of the CDF is accurate.
  double total_len = 0.0;
  for (const auto& p : pieces_) total_len += p.length();
  const quad::Rule rule = quad::gauss_legendre(20);
  auto cell_mass = [&](double a, double b) {
    double s = 0.0;
    for (int j = 0; j < rule.order(); ++j) {
      s += rule.weights[j] * pdf(a + 0.5 * (b - a) * (rule.nodes[j] + 1.0));
    }
    return 0.5 * (b - a) * s;
  };

  for (int cells = kBaseCells;; cells *= 2) {
    auto table = std::make_shared<CdfTable>();
    double acc = 0.0;
    double worst = 0.0;
    for (const auto& p : pieces_) {
      const int m = std::max(4, static_cast<int>(std::ceil(cells * p.length() / total_len)));
      const double h = p.length() / m;
      table->nodes.push_back(p.lo);
      table->cdf.push_back(acc);
      for (int i = 0; i < m; ++i) {
        const double a = p.lo + i * h;
        const double b = (i + 1 == m) ? p.hi : a + h;
        const double half = cell_mass(a, 0.5 * (a + b));
        const double full = half + cell_mass(0.5 * (a + b), b);
        worst = std::max(worst, std::abs(half - 0.5 * full));
        acc += full;
        table->nodes.push_back(b);
        table->cdf.push_back(acc);
      }
    }
    for (double& c : table->cdf) c /= acc;
    table_ = std::move(table);
    if (worst <= kTableTolerance || cells >= kMaxCells) break;
  }
}

bool NoiseDensity::is_even() const noexcept {
  switch (family_) {
    case DensityFamily::shifted_bump: return center_ == 0.0;
    default: return true;
  }
}

double NoiseDensity::max_abs() const noexcept {
  double m = 0.0;
  for (const auto& s : support_) m = std::max({m, std::abs(s.lo), std::abs(s.hi)});
  return m;
}

double NoiseDensity::min_abs() const noexcept {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& s : support_) {
    if (s.lo <= 0.0 && s.hi >= 0.0) return 0.0;
    m = std::min({m, std::abs(s.lo), std::abs(s.hi)});
  }
  return m;
}

int NoiseDensity::smoothness() const noexcept {
  switch (family_) {
    case DensityFamily::zero:
    case DensityFamily::smooth_bump:
      return kInfinite;
    case DensityFamily::ir_poly_bump: {
      const int at_origin = (k_ % 2 == 0) ? kInfinite : k_ - 1;
      return std::min(at_origin, n_ - 1);
    }
    default:
      return n_ - 1;
  }
}

int NoiseDensity::infrared_order() const noexcept {
  switch (family_) {
    case DensityFamily::ir_poly_bump: return k_;
    case DensityFamily::shifted_bump:
    case DensityFamily::mirrored_bump:
      if (min_abs() > 0.0) return kInfinite;
      return shape(0.0) > 0.0 ? 0 : n_;
    default: return 0;
  }
}

std::string NoiseDensity::describe() const {
  std::ostringstream os;
  os << to_string(family_);
  switch (family_) {
    case DensityFamily::zero: break;
    case DensityFamily::poly_bump: os << "(n=" << n_ << ", eta=" << half_width_ << ")"; break;
    case DensityFamily::smooth_bump: os << "(eta=" << half_width_ << ")"; break;
    case DensityFamily::ir_poly_bump:
      os << "(k=" << k_ << ", n=" << n_ << ", eta=" << half_width_ << ")";
      break;
    case DensityFamily::shifted_bump:
    case DensityFamily::mirrored_bump:
      os << "(c=" << center_ << ", w=" << half_width_ << ", n=" << n_ << ")";
      break;
  }
  return os.str();
}

double NoiseDensity::inverse_cdf(double p) const {
  if (is_point_mass()) return 0.0;
  const auto& t = *table_;
  auto it = std::upper_bound(t.cdf.begin(), t.cdf.end(), p);
  if (it == t.cdf.begin()) return t.nodes.front();
  if (it == t.cdf.end()) return t.nodes.back();
  const std::size_t i = static_cast<std::size_t>(it - t.cdf.begin()) - 1;
  const double frac = (p - t.cdf[i]) / (t.cdf[i + 1] - t.cdf[i]);
  return t.nodes[i] + frac * (t.nodes[i + 1] - t.nodes[i]);
}

std::vector<double> sample(const NoiseDensity& d, std::uint64_t seed, std::size_t count,
                           std::uint64_t stream) {
  std::vector<double> out(count, 0.0);
  if (d.is_point_mass()) return out;
  std::mt19937_64 gen(splitmix64(seed ^ splitmix64(stream + 0x5eedULL)));
  for (auto& v : out) {
    const double p = (static_cast<double>(gen() >> 11) + 0.5) * 0x1.0p-53;
    v = d.inverse_cdf(p);
  }
  return out;
}

std::complex<double> fourier(const NoiseDensity& d, double t) {
  if (d.is_point_mass()) return {1.0, 0.0};
  static const quad::Rule rule = quad::gauss_legendre(16);
  std::complex<double> sum{0.0, 0.0};
  for (const auto& piece : d.smooth_pieces()) {
    const int panels =
        std::max(16, static_cast<int>(std::ceil(std::abs(t) * piece.length() / 1.5)));
    const double h = piece.length() / panels;
    for (int p = 0; p < panels; ++p) {
      const double a = piece.lo + p * h;
      std::complex<double> s{0.0, 0.0};
      for (int j = 0; j < rule.order(); ++j) {
        const double off = 0.5 * h * (rule.nodes[j] + 1.0);
        s += rule.weights[j] * d.pdf(a + off) * std::polar(1.0, -t * off);
      }
      sum += quad::expi_neg(t, a) * s * (0.5 * h);
    }
  }
  return sum;
}

double moment(const NoiseDensity& d, int m) {
  if (m < 0) throw std::invalid_argument("moment: m must be >= 0");
  if (m == 0) return 1.0;
  if (d.is_point_mass()) return 0.0;
  if (d.is_even() && m % 2 == 1) return 0.0;
  return integrate_pieces(d.smooth_pieces(),
                          [&](double u) { return std::pow(u, m) * d.pdf(u); });
}

double scaled_power_moment(const NoiseDensity& d, double eps, int p) {
  if (!(eps > 0.0)) throw DomainError("scaled_power_moment: eps must be > 0");
  if (d.is_point_mass() || p == 0) return 1.0;
  if (p < 0) {
    for (const auto& s : d.support()) {
      if (!(s.lo > -eps)) throw DomainError("scaled_power_moment: support reaches y = -eps");
    }
  }
  return integrate_pieces(d.smooth_pieces(),
                          [&](double y) { return std::pow(1.0 + y / eps, p) * d.pdf(y); });
}

double scaled_inverse_moment(const NoiseDensity& d, double eps, int m) {
  return scaled_power_moment(d, eps, -m);
}

double inverse_power_moment(const NoiseDensity& d, double eps, int m) {
  if (d.is_point_mass() || !(d.min_abs() > 0.0)) {
    throw DomainError("inverse_power_moment: support of the density contains 0");
  }
  if (m == 0) return 1.0;
  return integrate_pieces(d.smooth_pieces(),
                          [&](double x) { return std::pow(eps / x, m) * d.pdf(x); });
}

}  // namespace qnoise
