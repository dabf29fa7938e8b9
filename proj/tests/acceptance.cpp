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

// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Extra lines starting with "    " are diagnostics.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "qnoise/analysis.hpp"
#include "qnoise/closed_form.hpp"
#include "qnoise/commands.hpp"
#include "test_util.hpp"

using namespace qnoise;

namespace {

const DensityMatrix kCoherent{0.7, {0.1, 0.2}};
const DensityMatrix kIncoherent{1.0, {0.0, 0.0}};

int failures = 0;

void report(int id, const std::string& name, bool ok, double seconds, double limit,
            const std::string& detail) {
  const bool in_time = seconds <= limit;
  if (!ok || !in_time) ++failures;
  std::printf("%s  %2d %-34s %s (%.2f s, limit %.0f s)\n", ok && in_time ? "PASS" : "FAIL", id,
              name.c_str(), detail.c_str(), seconds, limit);
  std::fflush(stdout);
}

void note(const char* fmt, auto... args) {
  std::printf("    ");
  std::printf(fmt, args...);
  std::printf("\n");
  std::fflush(stdout);
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double timed(const std::function<void()>& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct Tuple {
  NoiseCoordinates c;
  double t;
  DensityMatrix rho0;
};

std::vector<Tuple> random_tuples(std::size_t n) {
  std::mt19937_64 gen(20260101);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Tuple> out;
  for (std::size_t i = 0; i < n; ++i) {
    const double eps = 0.2 + 4.8 * u(gen);
    const NoiseCoordinates c{(u(gen) - 0.5) * 10.0 * eps, eps * (-0.95 + 1.9 * u(gen)), eps};
    const double t = 100.0 * u(gen);
    out.push_back({c, t, testing::random_state(gen)});
  }
  return out;
}

double fourier_exponent(const NoiseDensity& d, const std::vector<double>& times) {
  DecaySeries s;
  s.times = times;
  for (double t : times) s.deviations.push_back(std::abs(fourier(d, t)));
  s.error_estimates.assign(times.size(), 0.0);
  s.dev_rho11 = s.dev_re_rho12 = s.dev_im_rho12 = s.deviations;
  return fit_power_law(s).exponent;
}

RateFit fit_series(const NoiseModel& m, const DensityMatrix& rho0, const std::vector<double>& times,
                   bool coherence_only = false) {
  DecaySeries s = deviation_series(m, rho0, times, {});
  if (coherence_only) {
    for (std::size_t i = 0; i < s.size(); ++i) {
      s.deviations[i] = std::hypot(s.dev_re_rho12[i], s.dev_im_rho12[i]);
    }
  }
  return fit_power_law(s);
}

void criterion_1() {
  const auto tuples = random_tuples(10000);
  double worst_oracle = 0.0, worst_expm = 0.0;
  const double secs = timed([&] {
    for (const Tuple& x : tuples) {
      const DensityMatrix a = rho_t(x.rho0, x.c, x.t);
      const DensityMatrix b = evolve_oracle(x.c.hamiltonian(), x.rho0, x.t);
      worst_oracle = std::max({worst_oracle, std::abs(a.rho11 - b.rho11), std::abs(a.rho12 - b.rho12)});
      const Eigen::Matrix2cd e = testing::expm_evolve(x.c.hamiltonian(), x.rho0, x.t);
      worst_expm = std::max({worst_expm, std::abs(a.rho11 - e(0, 0).real()), std::abs(a.rho12 - e(0, 1))});
    }
  });
  report(1, "oracle equivalence", worst_oracle < 1e-10 && worst_expm < 1e-10, secs, 5,
         fmt("max|closed-oracle| %.2e, max|closed-expm| %.2e", worst_oracle, worst_expm));
}

void criterion_2() {
  const auto tuples = random_tuples(10000);
  double t0 = 0.0, trace = 0.0, herm = 0.0, pur = 0.0;
  bool positive = true;
  const double secs = timed([&] {
    for (const Tuple& x : tuples) {
      t0 = std::max(t0, frobenius_distance(rho_t(x.rho0, x.c, 0.0), x.rho0));
      const DensityMatrix r = rho_t(x.rho0, x.c, x.t);
      const Eigen::Matrix2cd m = testing::to_matrix(r);
      trace = std::max(trace, std::abs(m.trace() - 1.0));
      herm = std::max(herm, (m - m.adjoint()).norm());
      positive = positive && r.is_positive(1e-10);
      pur = std::max(pur, std::abs(purity(r) - purity(x.rho0)));
    }
  });
  report(2, "per-realization invariants",
         t0 <= 1e-10 && trace <= 1e-10 && herm <= 1e-10 && positive && pur <= 1e-10, secs, 5,
         fmt("t=0 %.1e, trace %.1e, herm %.1e, purity %.1e, positive %s", t0, trace, herm, pur,
             positive ? "yes" : "no"));
}

void criterion_3() {
  double worst_id = 0.0, worst_gamma = 0.0;
  int n_even = 0;
  const auto models = reference_models();
  const double secs = timed([&] {
    for (const NamedModel& nm : models) {
      const FinalStateCoeffs c = final_state_coeffs(nm.model, {});
      const double id = std::abs(c.beta + 2.0 * c.alpha - 1.0);
      worst_id = std::max(worst_id, id);
      if (nm.model.mu_o.is_even()) {
        ++n_even;
        worst_gamma = std::max(worst_gamma, std::abs(c.gamma));
      }
      note("%-22s %-12s alpha %.6e beta %.6e gamma %+.3e |b+2a-1| %.1e", nm.name.c_str(),
           to_string(classify(nm.model)).c_str(), c.alpha, c.beta, c.gamma, id);
    }
  });
  report(3, "final-state identity, even gamma", worst_id <= 1e-9 && worst_gamma < 1e-10, secs, 30,
         fmt("%zu models, max|b+2a-1| %.1e, max|gamma| over %d even %.1e", models.size(), worst_id,
             n_even, worst_gamma));
}

void criterion_4() {
  const std::vector<double> times = log_time_grid(1.0, 1e4, 40);
  bool ok = true;
  std::string detail;
  const double secs = timed([&] {
    for (int n : {1, 2}) {
      const NoiseDensity mu_d = NoiseDensity::poly_bump(n + 1, 0.4);
      const double e = fit_series({1.0, NoiseDensity::poly_bump(2, 0.3), mu_d}, kCoherent, times).exponent;
      const double fourier_e = fourier_exponent(mu_d, times);
      // mu_o(0) > 0 adds the t^(-1/2) factor of the off-diagonal average.
      const double oracle = fourier_e + 0.5;
      ok = ok && e >= n - 0.3 && std::abs(e - oracle) <= 0.3;
      detail += fmt("[n=%d exponent %.3f, bound %d, oracle %.3f] ", n, e, n, oracle);
      const double control = fit_series({1.0, NoiseDensity::zero(), mu_d}, kCoherent, times).exponent;
      note("n=%d: Fourier exponent of mu_d %.3f, literal |fit - Fourier| %.3f, control mu_o=zero %.3f",
           n, fourier_e, std::abs(e - fourier_e), control);
    }
  });
  report(4, "convergence rate, C^n diagonal", ok, secs, 600, detail);
}

void criterion_5() {
  const std::vector<double> times = log_time_grid(1.0, 1e4, 40);
  bool ok = true;
  std::string detail;
  const double secs = timed([&] {
    const RateFit f =
        fit_series({1.0, NoiseDensity::poly_bump(2, 0.3), NoiseDensity::zero()}, kIncoherent, times);
    ok = f.exponent >= 0.75;
    detail += fmt("[mu_o(0)>0: %.3f >= 0.75] ", f.exponent);
    for (int k : {1, 3}) {
      // Coherent start: the slowest channel, where the bound is sharp.
      const double e = fit_series({1.0, NoiseDensity::ir_poly_bump(k, 2, 0.3), NoiseDensity::zero()},
                                  kCoherent, times).exponent;
      const double bound = (k + 1) / 2.0 - 0.25;
      ok = ok && e >= bound;
      detail += fmt("[k=%d: %.3f >= %.2f] ", k, e, bound);
    }
  });
  report(5, "off-diagonal noise only", ok, secs, 900, detail);
  const double e2 = fit_series({1.0, NoiseDensity::ir_poly_bump(2, 2, 0.3), NoiseDensity::zero()},
                               kCoherent, times).exponent;
  note("exploratory k=2: exponent %.3f", e2);
}

void criterion_6() {
  const std::vector<double> times = log_time_grid(1.0, 1e4, 40);
  RateFit f;
  const double secs = timed([&] {
    f = fit_series({1.0, NoiseDensity::poly_bump(2, 0.3), NoiseDensity::zero()}, kCoherent, times, true);
  });
  report(6, "coherence rate heuristic", f.exponent >= 0.35 && f.exponent <= 0.75, secs, 300,
         fmt("exponent %.4f, heuristic 0.5, band [0.35, 0.75]", f.exponent));
}

void criterion_7() {
  RegimeReport a, b;
  const double secs = timed([&] {
    a = regime_report({1.0, NoiseDensity::poly_bump(2, 0.08), NoiseDensity::poly_bump(2, 0.2)}, QuadratureSpec{});
    b = regime_report({1.0, NoiseDensity::poly_bump(2, 0.04), NoiseDensity::poly_bump(2, 0.2)}, QuadratureSpec{});
  });
  const double fa = a.alpha_residual / b.alpha_residual;
  const double fb = a.beta_residual / b.beta_residual;
  report(7, "weak-noise expansion", a.regime == Regime::weak && fa >= 8.0 && fb >= 3.0, secs, 60,
         fmt("nu1 %.3f->%.3f, alpha residual x%.2f, beta residual x%.2f", a.nu1, b.nu1, fa, fb));
}

void criterion_8() {
  RegimeReport a, b;
  const double secs = timed([&] {
    a = regime_report({1.0, NoiseDensity::shifted_bump(11.0, 1.0, 2), NoiseDensity::poly_bump(2, 0.2)},
                      QuadratureSpec{});
    b = regime_report({1.0, NoiseDensity::shifted_bump(21.0, 1.0, 2), NoiseDensity::poly_bump(2, 0.2)},
                      QuadratureSpec{});
  });
  const double fa = a.alpha_residual / b.alpha_residual;
  const double fb = a.beta_residual / b.beta_residual;
  report(8, "strong-noise expansion", a.regime == Regime::strong && fa >= 3.0 && fb >= 1.7, secs, 60,
         fmt("nu2 %.3f->%.3f, |alpha-1/2| x%.2f, beta residual x%.2f", a.nu2, b.nu2, fa, fb));
}

void criterion_9() {
  bool ok = true;
  std::string detail;
  const double secs = timed([&] {
    for (const DensityMatrix& rho0 : {kCoherent, kIncoherent}) {
      auto weak = [](double nu) {
        return NoiseModel{1.0, NoiseDensity::poly_bump(2, 0.8 * nu), NoiseDensity::poly_bump(2, 0.2)};
      };
      const double cw = dephasing_distance(weak(0.1), rho0, {}).energy_basis / 0.1;
      const double dw = dephasing_distance(weak(0.05), rho0, {}).energy_basis;
      ok = ok && dw <= cw * 0.05;

      auto strong = [](double nu) {
        return NoiseModel{1.0, NoiseDensity::mirrored_bump(1.0 / nu + 1.0, 1.0, 2),
                          NoiseDensity::poly_bump(2, 0.2)};
      };
      const double cs = dephasing_distance(strong(0.1), rho0, {}).delocalized_basis / 0.1;
      const double ds = dephasing_distance(strong(0.05), rho0, {}).delocalized_basis;
      ok = ok && ds <= cs * 0.05;
      detail += fmt("[rho11=%.1f weak %.2e<=%.2e strong %.2e<=%.2e] ", rho0.rho11, dw, cw * 0.05, ds,
                    cs * 0.05);
    }
  });
  report(9, "dephasing-channel limits", ok, secs, 60, detail);
  // Non-even off-diagonal noise, logged only: the distance is a nu - b nu^2
  // so a zero-slack calibration at nu = 0.1 sits slightly below at 0.05.
  for (double s : {1.0, 0.5}) {
    const NoiseModel w{1.0, NoiseDensity::shifted_bump(0.04 * s, 0.04 * s, 2), NoiseDensity::poly_bump(2, 0.2)};
    const NoiseModel g{1.0, NoiseDensity::shifted_bump(11.0 / s, 1.0 / s, 2), NoiseDensity::poly_bump(2, 0.2)};
    note("non-even nu %.2f: weak dist/nu %.4f, strong dist/nu %.4f", 0.1 * s,
         dephasing_distance(w, kCoherent, {}).energy_basis / weak_parameter(w),
         dephasing_distance(g, kCoherent, {}).delocalized_basis / strong_parameter(g));
  }
}

void criterion_10() {
  std::vector<NamedModel> models;
  for (const NamedModel& nm : reference_models()) {
    if (!(nm.model.mu_o.is_point_mass() && nm.model.mu_d.is_point_mass())) models.push_back(nm);
  }
  std::mt19937_64 gen(10);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  QuadratureSpec mc;
  mc.mode = AveragingMode::monte_carlo;
  mc.samples = 1000000;
  mc.seed = 2026;
  double worst = 0.0;
  const double secs = timed([&] {
    for (int i = 0; i < 5; ++i) {
      const NamedModel& nm = models[gen() % models.size()];
      const double t = std::pow(10.0, 2.0 * u(gen) - 0.5);
      const DensityMatrix rho0 = testing::random_state(gen);
      const AveragedState q = expected_rho(nm.model, rho0, t, {});
      const AveragedState s = expected_rho(nm.model, rho0, t, mc);
      const double d[3] = {q.rho.rho11 - s.rho.rho11, q.rho.rho12.real() - s.rho.rho12.real(),
                           q.rho.rho12.imag() - s.rho.rho12.imag()};
      double z = 0.0;
      for (int j = 0; j < 3; ++j) {
        z = std::max(z, s.standard_error[j] > 0.0 ? std::abs(d[j]) / s.standard_error[j]
                                                  : (std::abs(d[j]) < 1e-12 ? 0.0 : 1e9));
      }
      worst = std::max(worst, z);
      note("%-22s t=%8.3f max |quad-MC|/se %.2f", nm.name.c_str(), t, z);
    }
  });
  report(10, "MC/quadrature cross-check", worst <= 3.0, secs, 120,
         fmt("5 points, M=1e6, worst %.2f standard errors", worst));
}

}  // namespace

int main() {
  const double total = timed([] {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
  });
  std::printf("%s: %d failing line(s), %.1f s total\n", failures ? "FAILED" : "ALL PASSED", failures, total);
  return failures ? 1 : 0;
}
