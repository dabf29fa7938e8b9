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

#include "qnoise/analysis.hpp"

#include <cmath>
#include <sstream>

#include "qnoise/errors.hpp"

namespace qnoise {

namespace {

constexpr std::size_t kMinSeries = 20;
constexpr int kMinPoints = 5;
constexpr double kFloorFactor = 10.0;

DecaySeries pick(const DecaySeries& s, const std::vector<std::size_t>& idx) {
  DecaySeries out;
  auto take = [&](const std::vector<double>& src, std::vector<double>& dst) {
    if (src.size() != s.size()) return;
    for (auto i : idx) dst.push_back(src[i]);
  };
  take(s.times, out.times);
  take(s.deviations, out.deviations);
  take(s.error_estimates, out.error_estimates);
  take(s.dev_rho11, out.dev_rho11);
  take(s.dev_re_rho12, out.dev_re_rho12);
  take(s.dev_im_rho12, out.dev_im_rho12);
  out.non_convergent = s.non_convergent;
  return out;
}

}  // namespace

Envelope envelope(const DecaySeries& s) {
  s.validate();
  if (s.size() < kMinSeries) {
    throw std::invalid_argument("envelope: need at least 20 points");
  }
  std::vector<std::size_t> idx;
  const auto& d = s.deviations;
  for (std::size_t i = 1; i + 1 < d.size(); ++i) {
    if (d[i] > d[i - 1] && d[i] > d[i + 1]) idx.push_back(i);
  }
  if (idx.size() < static_cast<std::size_t>(kMinPoints)) return {s, true};
  return {pick(s, idx), false};
}

RateFit fit_power_law(const DecaySeries& s, FitWindow window) {
  if (!(window.t_max > window.t_min) || !(window.t_min > 0.0)) {
    throw std::invalid_argument("fit_power_law: invalid window");
  }
  auto inside = [&](const DecaySeries& series) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < series.size(); ++i) {
      if (series.times[i] >= window.t_min && series.times[i] <= window.t_max) idx.push_back(i);
    }
    return idx;
  };
  Envelope env = envelope(s);
  std::vector<std::size_t> in = inside(env.series);
  if (!env.fallback && in.size() < static_cast<std::size_t>(kMinPoints)) {
    // Too little oscillation inside the window: fit the raw series there.
    env = {s, true};
    in = inside(s);
  }
  const DecaySeries& e = env.series;
  if (in.size() < static_cast<std::size_t>(kMinPoints)) {
    throw std::invalid_argument("fit_power_law: fewer than 5 points in the window");
  }

  for (std::size_t j = 0; j < in.size(); ++j) {
    const std::size_t i = in[j];
    const bool floored = !(e.deviations[i] > 0.0) ||
                         (i < e.error_estimates.size() &&
                          !(e.deviations[i] > kFloorFactor * e.error_estimates[i]));
    if (floored) {
      FitWindow usable{window.t_min, j > 0 ? e.times[in[j - 1]] : 0.0};
      std::ostringstream os;
      os << "fit_power_law: deviation at t=" << e.times[i]
         << " is within 10x of its error estimate";
      throw FloorReached(os.str(), usable);
    }
  }

  const double n = static_cast<double>(in.size());
  double mx = 0.0, my = 0.0;
  for (auto i : in) {
    mx += std::log(e.times[i]);
    my += std::log(e.deviations[i]);
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (auto i : in) {
    const double dx = std::log(e.times[i]) - mx;
    const double dy = std::log(e.deviations[i]) - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  const double slope = sxy / sxx;
  const double sse = std::max(0.0, syy - slope * sxy);

  RateFit f;
  f.exponent = -slope;
  f.intercept = my - slope * mx;
  f.r_squared = syy > 0.0 ? std::clamp(1.0 - sse / syy, 0.0, 1.0) : 1.0;
  f.exponent_stderr = n > 2 ? std::sqrt(sse / (n - 2) / sxx) : 0.0;
  f.window = window;
  f.n_envelope_points = static_cast<int>(in.size());
  f.envelope_fallback = env.fallback;
  return f;
}

std::string to_string(Regime r) {
  switch (r) {
    case Regime::weak: return "weak";
    case Regime::strong: return "strong";
    default: return "intermediate";
  }
}

double weak_parameter(const NoiseModel& m) {
  return (m.mu_o.max_abs() / m.eps) / (1.0 - m.mu_d.max_abs() / m.eps);
}

double strong_parameter(const NoiseModel& m) {
  const double lo = m.mu_o.min_abs();
  return lo > 0.0 ? m.eps / lo : std::numeric_limits<double>::infinity();
}

Regime classify(const NoiseModel& m) {
  if (weak_parameter(m) < 0.25) return Regime::weak;
  if (strong_parameter(m) < 0.25) return Regime::strong;
  return Regime::intermediate;
}

RegimeReport regime_report(const NoiseModel& m, const FinalStateCoeffs& computed) {
  m.validate();
  RegimeReport r;
  r.nu1 = weak_parameter(m);
  r.nu2 = strong_parameter(m);
  r.regime = classify(m);
  r.computed = computed;
  const double eps = m.eps;

  if (r.regime == Regime::weak) {
    const double x1 = moment(m.mu_o, 1) / eps;
    const double x2 = moment(m.mu_o, 2) / (eps * eps);
    const double x3 = moment(m.mu_o, 3) / (eps * eps * eps);
    r.alpha_lead = 2.0 * x2 * scaled_power_moment(m.mu_d, eps, -2);
    r.beta_lead = 1.0;
    r.gamma_lead = -x1 * scaled_power_moment(m.mu_d, eps, -1) +
                   4.0 * x3 * scaled_power_moment(m.mu_d, eps, -3);
    r.has_expansion = true;
  } else if (r.regime == Regime::strong) {
    r.alpha_lead = 0.5;
    r.beta_lead =
        0.25 * inverse_power_moment(m.mu_o, eps, 2) * scaled_power_moment(m.mu_d, eps, 2);
    r.gamma_lead =
        -0.25 * inverse_power_moment(m.mu_o, eps, 1) * scaled_power_moment(m.mu_d, eps, 1);
    r.has_expansion = true;
  }
  if (r.has_expansion) {
    r.alpha_residual = std::abs(computed.alpha - r.alpha_lead);
    r.beta_residual = std::abs(computed.beta - r.beta_lead);
    r.gamma_residual = std::abs(computed.gamma - r.gamma_lead);
  }
  return r;
}

RegimeReport regime_report(const NoiseModel& m, const QuadratureSpec& spec) {
  return regime_report(m, final_state_coeffs(m, spec));
}

DephasingDistances dephasing_distance(const FinalStateCoeffs& c, const DensityMatrix& rho0) {
  const DensityMatrix bar = final_state(c, rho0, 1e-6);
  const DensityMatrix energy{rho0.rho11, {0.0, 0.0}};
  const DensityMatrix deloc{0.5, {rho0.rho12.real(), 0.0}};
  return {frobenius_distance(bar, energy), frobenius_distance(bar, deloc)};
}

DephasingDistances dephasing_distance(const NoiseModel& m, const DensityMatrix& rho0,
                                      const QuadratureSpec& spec) {
  return dephasing_distance(final_state_coeffs(m, spec), rho0);
}

}  // namespace qnoise
