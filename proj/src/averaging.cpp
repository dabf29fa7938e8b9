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

#include "qnoise/averaging.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "parallel.hpp"
#include "qnoise/closed_form.hpp"
#include "qnoise/errors.hpp"

namespace qnoise {

namespace {

constexpr int kRefineOrders = 6;
constexpr int kSeriesMinPanels = 8;
constexpr int kCoeffStartPanels = 8;
constexpr int kCoeffDoublings = 7;
constexpr std::size_t kMcChunks = 64;

FinalStateCoeffs coeffs_from_channels(const PhaseSpectrum::Channels& J) {
  FinalStateCoeffs c;
  c.alpha = 2.0 * J[2].real();
  c.beta = J[0].real() - 2.0 * J[2].real() + J[4].real();
  c.gamma = J[3].real() - J[1].real();
  return c;
}

PhaseSpectrum make_spectrum(const NoiseModel& m, const QuadratureSpec& spec, int order,
                            double t_max, int min_panels) {
  PhaseSpectrum::Options opt;
  opt.angular_panels = std::max(2, min_panels / 4);
  opt.order = order;
  opt.t_max = t_max;
  opt.panels_per_unit_phase = spec.panels_per_unit_phase;
  opt.min_panels = min_panels;
  return PhaseSpectrum::build(m.eps, m.mu_o, m.mu_d, opt);
}

// Frozen samples shared by every time point (common random numbers).
struct McSamples {
  std::vector<double> phase;
  std::vector<double> R;
};

McSamples draw(const NoiseModel& m, const QuadratureSpec& spec) {
  const auto xs = sample(m.mu_o, spec.seed, spec.samples, 1);
  const auto ys = sample(m.mu_d, spec.seed, spec.samples, 2);
  McSamples s;
  s.phase.resize(spec.samples);
  s.R.resize(spec.samples);
  for (std::size_t i = 0; i < spec.samples; ++i) {
    const PhaseData pd = phase_data({xs[i], ys[i], m.eps});
    s.phase[i] = pd.phase;
    s.R[i] = pd.R;
  }
  return s;
}

// Sums and sums of squares of a fixed number of real columns, accumulated in
// fixed chunks and reduced in chunk order.
template <int N, class F>
std::array<std::array<double, 2>, N> mc_moments(std::size_t count, int threads, F&& per_sample) {
  std::vector<std::array<std::array<double, 2>, N>> part(kMcChunks);
  detail::parallel_for(kMcChunks, threads, [&](std::size_t c) {
    std::array<std::array<double, 2>, N> acc{};
    const std::size_t lo = count * c / kMcChunks;
    const std::size_t hi = count * (c + 1) / kMcChunks;
    for (std::size_t i = lo; i < hi; ++i) {
      const std::array<double, N> v = per_sample(i);
      for (int k = 0; k < N; ++k) {
        acc[k][0] += v[k];
        acc[k][1] += v[k] * v[k];
      }
    }
    part[c] = acc;
  });
  std::array<std::array<double, 2>, N> total{};
  for (const auto& p : part) {
    for (int k = 0; k < N; ++k) {
      total[k][0] += p[k][0];
      total[k][1] += p[k][1];
    }
  }
  return total;
}

// Mean and standard error of the mean.
std::pair<double, double> mean_se(const std::array<double, 2>& s, std::size_t n) {
  const double mean = s[0] / static_cast<double>(n);
  if (n < 2) return {mean, 0.0};
  const double var = std::max(0.0, (s[1] - n * mean * mean) / static_cast<double>(n - 1));
  return {mean, std::sqrt(var / static_cast<double>(n))};
}

std::array<double, 3> oscillating_sample(const DensityMatrix& rho0, double phase, double R,
                                         double t) {
  const OscillatoryAmplitudes a = hg_functions(rho0, R);
  const complex e = std::polar(1.0, -phase * t);
  const complex d12 = e * a.g1 + std::conj(e) * a.g2;
  return {2.0 * (e * a.h).real(), d12.real(), d12.imag()};
}

}  // namespace

void NoiseModel::validate() const {
  if (!(eps > 0.0)) throw DomainError("noise model: eps must be > 0");
  if (!(mu_d.max_abs() < eps)) {
    throw DomainError("noise model: diagonal noise support must lie inside (-eps, eps)");
  }
}

std::string NoiseModel::describe() const {
  std::ostringstream os;
  os << "eps=" << eps << ", mu_o=" << mu_o.describe() << ", mu_d=" << mu_d.describe();
  return os.str();
}

std::string to_string(AveragingMode m) {
  return m == AveragingMode::quadrature ? "quadrature" : "monte_carlo";
}

AveragingMode averaging_mode_from_string(const std::string& name) {
  if (name == "quadrature") return AveragingMode::quadrature;
  if (name == "monte_carlo") return AveragingMode::monte_carlo;
  throw std::invalid_argument("unknown averaging mode '" + name + "'");
}

void QuadratureSpec::validate() const {
  if (base_order < 4) throw ConfigError("base_order", "must be >= 4");
  if (!(panels_per_unit_phase > 0.0)) throw ConfigError("panels_per_unit_phase", "must be > 0");
  if (!(tolerance > 0.0)) throw ConfigError("tolerance", "must be > 0");
  if (!(coefficient_tolerance > 0.0)) throw ConfigError("coefficient_tolerance", "must be > 0");
  if (mode == AveragingMode::monte_carlo && samples < 2) {
    throw ConfigError("samples", "must be >= 2");
  }
  if (threads < 1) throw ConfigError("threads", "must be >= 1");
}

double OscillatoryPart::frobenius() const noexcept {
  return std::sqrt(2.0 * rho11 * rho11 + 2.0 * std::norm(rho12));
}

OscillatoryPart oscillatory_part(const PhaseSpectrum::Channels& J, const DensityMatrix& rho0) {
  const double c = 2.0 * rho0.rho11 - 1.0;
  const complex r12 = rho0.rho12;
  const complex r21 = rho0.rho21();
  const complex h = -r12 * J[1] + c * J[2] + r21 * J[3];
  const complex g1 = r12 * J[0] - c * J[1] - r21 * J[2];
  const complex g2 = -r21 * std::conj(J[2]) + c * std::conj(J[3]) + r12 * std::conj(J[4]);
  return {2.0 * h.real(), g1 + g2};
}

FinalStateCoeffs final_state_coeffs(const NoiseModel& model, const QuadratureSpec& spec) {
  model.validate();
  spec.validate();

  if (spec.mode == AveragingMode::monte_carlo) {
    const McSamples s = draw(model, spec);
    const auto m = mc_moments<3>(spec.samples, spec.threads, [&](std::size_t i) {
      const StationaryCoeffs f = stationary_coeffs(s.R[i]);
      return std::array<double, 3>{f.f_alpha, f.f_beta, f.f_gamma};
    });
    const auto [a, sa] = mean_se(m[0], spec.samples);
    const auto [b, sb] = mean_se(m[1], spec.samples);
    const auto [g, sg] = mean_se(m[2], spec.samples);
    return {a, b, g, std::max({sa, sb, sg})};
  }

  double diff = 0.0;
  FinalStateCoeffs fine;
  for (int j = 0, panels = kCoeffStartPanels; j < kCoeffDoublings; ++j, panels *= 2) {
    const auto lo = coeffs_from_channels(
        make_spectrum(model, spec, spec.base_order, 0.0, panels).transform(0.0));
    fine = coeffs_from_channels(
        make_spectrum(model, spec, spec.base_order + kRefineOrders, 0.0, panels).transform(0.0));
    diff = std::max({std::abs(lo.alpha - fine.alpha), std::abs(lo.beta - fine.beta),
                     std::abs(lo.gamma - fine.gamma)});
    if (diff < spec.coefficient_tolerance) {
      fine.error_estimate = diff;
      return fine;
    }
  }
  throw ConvergenceError("final_state_coeffs: coefficients did not converge; increase base_order",
                         diff);
}

DensityMatrix final_state(const FinalStateCoeffs& c, const DensityMatrix& rho0, double tol) {
  const double re12 = rho0.rho12.real();
  DensityMatrix out{c.alpha + c.beta * rho0.rho11 - 2.0 * c.gamma * re12,
                    complex{c.gamma * (1.0 - 2.0 * rho0.rho11) + 2.0 * c.alpha * re12, 0.0}};
  if (!out.is_positive(tol)) {
    throw DomainError("final_state: coefficients give a non-positive state");
  }
  return out;
}

AveragedState expected_rho(const NoiseModel& model, const DensityMatrix& rho0, double t,
                           const QuadratureSpec& spec) {
  if (t < 0.0) throw DomainError("expected_rho: t must be >= 0");
  AveragedState out = expected_rho_series(model, rho0, {t}, spec).front();
  if (spec.mode == AveragingMode::quadrature && out.error_estimate > spec.tolerance) {
    throw ConvergenceError(
        "expected_rho: quadrature did not reach tolerance; increase panels_per_unit_phase",
        out.error_estimate);
  }
  return out;
}

std::vector<AveragedState> expected_rho_series(const NoiseModel& model, const DensityMatrix& rho0,
                                               const std::vector<double>& times,
                                               const QuadratureSpec& spec) {
  model.validate();
  spec.validate();
  std::vector<AveragedState> out(times.size());
  if (times.empty()) return out;
  for (double t : times) {
    if (!(t >= 0.0)) throw DomainError("expected_rho_series: times must be >= 0");
  }

  if (spec.mode == AveragingMode::monte_carlo) {
    const McSamples s = draw(model, spec);
    for (std::size_t i = 0; i < times.size(); ++i) {
      const double t = times[i];
      const auto m = mc_moments<3>(spec.samples, spec.threads, [&](std::size_t j) {
        const DensityMatrix r = stationary_part(stationary_coeffs(s.R[j]), rho0);
        const auto osc = oscillating_sample(rho0, s.phase[j], s.R[j], t);
        return std::array<double, 3>{r.rho11 + osc[0], r.rho12.real() + osc[1], osc[2]};
      });
      const auto [r11, s11] = mean_se(m[0], spec.samples);
      const auto [re, sre] = mean_se(m[1], spec.samples);
      const auto [im, sim] = mean_se(m[2], spec.samples);
      out[i].rho = {r11, {re, im}};
      out[i].standard_error = {s11, sre, sim};
      out[i].error_estimate = std::max({s11, sre, sim});
    }
    return out;
  }

  const FinalStateCoeffs coeffs = final_state_coeffs(model, spec);
  const DensityMatrix bar = final_state(coeffs, rho0, 1e-6);
  const double t_max = *std::max_element(times.begin(), times.end());
  const PhaseSpectrum lo = make_spectrum(model, spec, spec.base_order, t_max, kSeriesMinPanels);
  const PhaseSpectrum hi =
      make_spectrum(model, spec, spec.base_order + kRefineOrders, t_max, kSeriesMinPanels);
  detail::parallel_for(times.size(), spec.threads, [&](std::size_t i) {
    const auto a = oscillatory_part(lo.transform(times[i]), rho0);
    const auto b = oscillatory_part(hi.transform(times[i]), rho0);
    const OscillatoryPart delta{b.rho11 - a.rho11, b.rho12 - a.rho12};
    out[i].rho = {bar.rho11 + b.rho11, bar.rho12 + b.rho12};
    out[i].error_estimate = std::max(coeffs.error_estimate, delta.frobenius());
  });
  return out;
}

DecaySeries deviation_series(const NoiseModel& model, const DensityMatrix& rho0,
                             const std::vector<double>& times, const QuadratureSpec& spec) {
  model.validate();
  spec.validate();
  DecaySeries out;
  out.times = times;
  const std::size_t n = times.size();
  out.deviations.assign(n, 0.0);
  out.error_estimates.assign(n, 0.0);
  out.dev_rho11.assign(n, 0.0);
  out.dev_re_rho12.assign(n, 0.0);
  out.dev_im_rho12.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(times[i] >= 0.0)) throw DomainError("deviation_series: times must be >= 0");
    if (i > 0 && !(times[i] > times[i - 1])) {
      throw DomainError("deviation_series: times must be strictly increasing");
    }
  }
  if (n == 0) return out;

  auto store = [&](std::size_t i, const OscillatoryPart& d, double err) {
    out.deviations[i] = d.frobenius();
    out.dev_rho11[i] = d.rho11;
    out.dev_re_rho12[i] = d.rho12.real();
    out.dev_im_rho12[i] = d.rho12.imag();
    out.error_estimates[i] = err;
  };

  if (spec.mode == AveragingMode::monte_carlo) {
    const McSamples s = draw(model, spec);
    for (std::size_t i = 0; i < n; ++i) {
      const double t = times[i];
      const auto m = mc_moments<3>(spec.samples, spec.threads, [&](std::size_t j) {
        return oscillating_sample(rho0, s.phase[j], s.R[j], t);
      });
      const auto [d11, s11] = mean_se(m[0], spec.samples);
      const auto [re, sre] = mean_se(m[1], spec.samples);
      const auto [im, sim] = mean_se(m[2], spec.samples);
      store(i, {d11, {re, im}}, std::sqrt(2.0 * s11 * s11 + 2.0 * (sre * sre + sim * sim)));
    }
  } else {
    const double t_max = times.back();
    const PhaseSpectrum lo = make_spectrum(model, spec, spec.base_order, t_max, kSeriesMinPanels);
    const PhaseSpectrum hi =
        make_spectrum(model, spec, spec.base_order + kRefineOrders, t_max, kSeriesMinPanels);
    detail::parallel_for(n, spec.threads, [&](std::size_t i) {
      const auto a = oscillatory_part(lo.transform(times[i]), rho0);
      const auto b = oscillatory_part(hi.transform(times[i]), rho0);
      const OscillatoryPart delta{b.rho11 - a.rho11, b.rho12 - a.rho12};
      store(i, b, delta.frobenius());
    });
  }

  for (std::size_t i = 0; i < n; ++i) {
    if (out.error_estimates[i] * 10.0 > out.deviations[i]) ++out.floor_flagged;
  }
  out.non_convergent = model.mu_o.is_point_mass() && model.mu_d.is_point_mass() &&
                       out.deviations.back() > 1e-12;
  return out;
}

}  // namespace qnoise
