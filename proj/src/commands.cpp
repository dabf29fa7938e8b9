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

#include "qnoise/commands.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include "qnoise/analysis.hpp"
#include "qnoise/closed_form.hpp"
#include "qnoise/config.hpp"
#include "qnoise/errors.hpp"

namespace qnoise {

using nlohmann::json;

namespace {

constexpr const char* kVersion = QNOISE_VERSION;

struct Run {
  ExperimentConfig config;
  std::filesystem::path dir;
  std::ostream& out;

  std::filesystem::path file(const std::string& suffix) const {
    return dir / (config.output.prefix + "_" + suffix);
  }
};

json envelope_json(const Run& r, const std::string& command) {
  return {{"tool", "qnoise"}, {"version", kVersion}, {"command", command},
          {"config", to_json(r.config)}};
}

void write_text(const Run& r, const std::filesystem::path& p, const std::string& body) {
  std::ofstream f(p, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write '" + p.string() + "'");
  f << body;
  r.out << p.string() << '\n';
}

void write_json(const Run& r, const std::filesystem::path& p, const json& j) {
  write_text(r, p, j.dump(2) + "\n");
}

std::string csv_preamble(const Run& r, const std::string& command) {
  std::ostringstream os;
  os << "# qnoise " << kVersion << " " << command << "\n";
  os << "# config " << to_json(r.config).dump() << "\n";
  return os.str();
}

std::string join(std::initializer_list<double> vals) {
  std::string s;
  for (double v : vals) {
    if (!s.empty()) s += ',';
    s += format_double(v);
  }
  return s;
}

json state_json(const DensityMatrix& rho) {
  return {{"rho11", rho.rho11}, {"re_rho12", rho.rho12.real()}, {"im_rho12", rho.rho12.imag()}};
}

json coeffs_json(const FinalStateCoeffs& c) {
  return {{"alpha", c.alpha},
          {"beta", c.beta},
          {"gamma", c.gamma},
          {"error_estimate", c.error_estimate},
          {"identity_residual", std::abs(c.beta + 2.0 * c.alpha - 1.0)}};
}

json fit_json(const RateFit& f) {
  return {{"exponent", f.exponent},
          {"exponent_stderr", f.exponent_stderr},
          {"intercept", f.intercept},
          {"r_squared", f.r_squared},
          {"window", {f.window.t_min, f.window.t_max}},
          {"n_envelope_points", f.n_envelope_points},
          {"envelope_fallback", f.envelope_fallback}};
}

int cmd_evolve(const Run& r) {
  const auto& c = r.config;
  std::vector<double> times = c.time_grid.times();
  if (times.front() > 0.0) times.insert(times.begin(), 0.0);
  const NoiseCoordinates coords{c.frozen_x, c.frozen_y, c.model.eps};
  std::ostringstream os;
  os << csv_preamble(r, "evolve") << "t,rho11,re_rho12,im_rho12,purity\n";
  for (double t : times) {
    const DensityMatrix rho = rho_t(c.initial_state, coords, t);
    os << join({t, rho.rho11, rho.rho12.real(), rho.rho12.imag(), purity(rho)}) << '\n';
  }
  write_text(r, r.file("evolve.csv"), os.str());
  return kExitOk;
}

int cmd_average(const Run& r) {
  const auto& c = r.config;
  const auto times = c.time_grid.times();
  const auto states = expected_rho_series(c.model, c.initial_state, times, c.quadrature);
  const bool mc = c.quadrature.mode == AveragingMode::monte_carlo;
  std::ostringstream os;
  os << csv_preamble(r, "average")
     << "t,rho11,re_rho12,im_rho12,err_rho11,err_re_rho12,err_im_rho12\n";
  bool flagged = false;
  for (std::size_t i = 0; i < times.size(); ++i) {
    const auto& s = states[i];
    const auto e = mc ? s.standard_error
                      : std::array<double, 3>{s.error_estimate, s.error_estimate,
                                              s.error_estimate};
    if (!mc && s.error_estimate > c.quadrature.tolerance) flagged = true;
    os << join({times[i], s.rho.rho11, s.rho.rho12.real(), s.rho.rho12.imag(), e[0], e[1], e[2]})
       << '\n';
  }
  write_text(r, r.file("average.csv"), os.str());
  return flagged ? kExitConvergence : kExitOk;
}

int cmd_final_state(const Run& r) {
  const auto& c = r.config;
  json j = envelope_json(r, "final-state");
  int code = kExitOk;
  try {
    const FinalStateCoeffs coeffs = final_state_coeffs(c.model, c.quadrature);
    j["result"] = coeffs_json(coeffs);
    j["result"]["rho_bar"] = state_json(final_state(coeffs, c.initial_state));
    j["flagged"] = false;
  } catch (const ConvergenceError& e) {
    j["flagged"] = true;
    j["error"] = e.what();
    j["achieved"] = e.achieved();
    code = kExitConvergence;
  }
  write_json(r, r.file("final_state.json"), j);
  return code;
}

int cmd_rate_fit(const Run& r) {
  const auto& c = r.config;
  const DecaySeries s =
      deviation_series(c.model, c.initial_state, c.time_grid.times(), c.quadrature);
  {
    std::ostringstream os;
    os << csv_preamble(r, "rate-fit series");
    write_csv(os, s);
    write_text(r, r.file("series.csv"), os.str());
  }
  json j = envelope_json(r, "rate-fit");
  j["non_convergent"] = s.non_convergent;
  j["floor_flagged_points"] = s.floor_flagged;
  int code = kExitOk;
  try {
    const Envelope env = envelope(s);
    std::ostringstream os;
    os << csv_preamble(r, "rate-fit envelope");
    write_csv(os, env.series);
    write_text(r, r.file("envelope.csv"), os.str());
    const RateFit fit = fit_power_law(s, c.fit_window);
    j["result"] = fit_json(fit);
    j["flagged"] = fit.envelope_fallback;
  } catch (const FloorReached& e) {
    j["flagged"] = true;
    j["error"] = e.what();
    j["usable_window"] = {e.usable().t_min, e.usable().t_max};
    code = kExitConvergence;
  } catch (const std::invalid_argument& e) {
    j["flagged"] = true;
    j["error"] = e.what();
    code = kExitConvergence;
  }
  write_json(r, r.file("rate_fit.json"), j);
  return code;
}

int cmd_regime_check(const Run& r) {
  const auto& c = r.config;
  const FinalStateCoeffs coeffs = final_state_coeffs(c.model, c.quadrature);
  const RegimeReport rep = regime_report(c.model, coeffs);
  const DephasingDistances d = dephasing_distance(coeffs, c.initial_state);
  json j = envelope_json(r, "regime-check");
  auto finite_or_null = [](double v) { return std::isfinite(v) ? json(v) : json(nullptr); };
  j["result"] = {{"regime", to_string(rep.regime)},
                 {"nu1", finite_or_null(rep.nu1)},
                 {"nu2", finite_or_null(rep.nu2)},
                 {"computed", coeffs_json(coeffs)},
                 {"has_expansion", rep.has_expansion},
                 {"dephasing_distance",
                  {{"energy_basis", d.energy_basis}, {"delocalized_basis", d.delocalized_basis}}}};
  if (rep.has_expansion) {
    j["result"]["leading_order"] = {
        {"alpha", rep.alpha_lead}, {"beta", rep.beta_lead}, {"gamma", rep.gamma_lead}};
    j["result"]["residual"] = {{"alpha", rep.alpha_residual},
                               {"beta", rep.beta_residual},
                               {"gamma", rep.gamma_residual}};
  }
  j["flagged"] = false;
  write_json(r, r.file("regime.json"), j);
  return kExitOk;
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {"evolve",    "average",      "final-state",
                                                 "rate-fit",  "regime-check", "validate"};
  return names;
}

std::vector<NamedModel> reference_models() {
  using D = NoiseDensity;
  return {
      {"noiseless", {1.0, D::zero(), D::zero()}},
      {"uniform_offdiag", {1.0, D::poly_bump(0, 0.3), D::zero()}},
      {"poly_both", {1.0, D::poly_bump(2, 0.3), D::poly_bump(2, 0.4)}},
      {"smooth_offdiag", {1.0, D::smooth_bump(0.5), D::poly_bump(1, 0.5)}},
      {"ir1_offdiag", {1.0, D::ir_poly_bump(1, 2, 0.3), D::zero()}},
      {"ir3_smooth_diag", {1.0, D::ir_poly_bump(3, 2, 0.5), D::smooth_bump(0.3)}},
      {"shifted_intermediate", {1.0, D::shifted_bump(0.2, 0.3, 2), D::poly_bump(3, 0.4)}},
      {"shifted_strong", {1.0, D::shifted_bump(11.0, 1.0, 2), D::poly_bump(2, 0.2)}},
      {"mirrored_strong", {1.0, D::mirrored_bump(21.0, 1.0, 2), D::zero()}},
      {"poly_weak", {1.0, D::poly_bump(1, 0.08), D::poly_bump(2, 0.2)}},
      {"smooth_wide", {1.0, D::smooth_bump(2.0), D::poly_bump(0, 0.9)}},
      {"mirrored_touching", {2.0, D::mirrored_bump(1.0, 1.0, 1), D::ir_poly_bump(2, 1, 0.4)}},
  };
}

std::vector<CheckResult> run_validation_suite() {
  std::vector<CheckResult> out;
  auto record = [&](const std::string& name, bool ok, const std::string& detail) {
    out.push_back({name, ok, detail});
  };
  auto fmt = [](double v) {
    std::ostringstream os;
    os.precision(3);
    os << v;
    return os.str();
  };

  std::mt19937_64 gen(20260101);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double oracle_err = 0.0, purity_err = 0.0, positivity = 0.0;
  for (int i = 0; i < 2000; ++i) {
    const double eps = 0.5 + 1.5 * u(gen);
    const NoiseCoordinates c{-5.0 + 10.0 * u(gen), eps * (-0.9 + 1.8 * u(gen)), eps};
    const double t = 50.0 * u(gen);
    const double th = std::numbers::pi * u(gen), ph = 2.0 * std::numbers::pi * u(gen), len = u(gen);
    const DensityMatrix rho0{0.5 + 0.5 * len * std::cos(th),
                             complex{0.5 * len * std::sin(th) * std::cos(ph),
                                     -0.5 * len * std::sin(th) * std::sin(ph)}};
    const DensityMatrix a = rho_t(rho0, c, t);
    const DensityMatrix b = evolve_oracle(c.hamiltonian(), rho0, t);
    oracle_err = std::max({oracle_err, std::abs(a.rho11 - b.rho11), std::abs(a.rho12 - b.rho12)});
    purity_err = std::max(purity_err, std::abs(purity(a) - purity(rho0)));
    positivity = std::max(positivity, std::norm(a.rho12) - a.rho11 * (1.0 - a.rho11));
  }
  record("oracle_equivalence", oracle_err < 1e-10, "max |closed form - oracle| = " + fmt(oracle_err));
  record("purity_conservation", purity_err < 1e-10, "max purity drift = " + fmt(purity_err));
  record("positivity", positivity < 1e-10, "max |rho12|^2 - rho11 rho22 = " + fmt(positivity));

  double ident = 0.0, gamma_even = 0.0;
  bool converged = true;
  for (const auto& nm : reference_models()) {
    try {
      const auto c = final_state_coeffs(nm.model, QuadratureSpec{});
      ident = std::max(ident, std::abs(c.beta + 2.0 * c.alpha - 1.0));
      if (nm.model.mu_o.is_even()) gamma_even = std::max(gamma_even, std::abs(c.gamma));
    } catch (const ConvergenceError&) {
      converged = false;
    }
  }
  record("final_state_identity", converged && ident < 1e-9, "max |beta + 2 alpha - 1| = " + fmt(ident));
  record("even_gamma_vanishes", converged && gamma_even < 1e-10, "max |gamma| = " + fmt(gamma_even));

  {
    const NoiseModel m{1.0, NoiseDensity::zero(), NoiseDensity::zero()};
    const DensityMatrix rho0{0.7, {0.1, 0.2}};
    const auto e = expected_rho(m, rho0, 3.0, QuadratureSpec{});
    const auto d = rho_t(rho0, {0.0, 0.0, 1.0}, 3.0);
    const double err = std::max(std::abs(e.rho.rho11 - d.rho11), std::abs(e.rho.rho12 - d.rho12));
    record("deterministic_limit", err < 1e-12, "max deviation = " + fmt(err));
  }
  {
    const auto d = NoiseDensity::poly_bump(1, 1.0);
    double err = 0.0;
    for (double t : {0.5, 3.0, 17.0, 250.0}) {
      const double ref = 3.0 * (std::sin(t) - t * std::cos(t)) / (t * t * t);
      err = std::max(err, std::abs(fourier(d, t) - complex{ref, 0.0}));
    }
    record("fourier_closed_form", err < 1e-12, "max error = " + fmt(err));
  }
  {
    DecaySeries s;
    s.times = log_time_grid(1.0, 1e4, 40);
    for (double t : s.times) s.deviations.push_back(3.0 / (t * t));
    s.error_estimates.assign(s.times.size(), 0.0);
    const RateFit f = fit_power_law(s, {1e2, 1e4});
    record("fit_synthetic_power_law", std::abs(f.exponent - 2.0) < 1e-6,
           "exponent = " + fmt(f.exponent));
  }
  return out;
}

int run_command(const std::string& name, const CommandOptions& opt, std::ostream& out,
                std::ostream& err) {
  if (name == "validate") {
    bool all = true;
    try {
      for (const auto& c : run_validation_suite()) {
        out << (c.passed ? "PASS " : "FAIL ") << c.name << "  " << c.detail << '\n';
        all = all && c.passed;
      }
    } catch (const std::exception& e) {
      err << "validate: " << e.what() << '\n';
      return kExitFailed;
    }
    return all ? kExitOk : kExitFailed;
  }

  static const std::map<std::string, std::function<int(const Run&)>> table = {
      {"evolve", cmd_evolve},
      {"average", cmd_average},
      {"final-state", cmd_final_state},
      {"rate-fit", cmd_rate_fit},
      {"regime-check", cmd_regime_check},
  };
  const auto it = table.find(name);
  if (it == table.end()) {
    err << "unknown command '" << name << "'\n";
    return kExitConfig;
  }

  try {
    if (opt.config_path.empty()) throw ConfigError("--config", "required for " + name);
    ExperimentConfig cfg = load_config(opt.config_path);
    if (opt.seed) cfg.seed = *opt.seed;
    cfg.quadrature.seed = cfg.seed;
    if (opt.threads) {
      if (*opt.threads < 1) throw ConfigError("--threads", "must be >= 1");
      cfg.quadrature.threads = *opt.threads;
    }
    if (opt.out_dir) cfg.output.dir = *opt.out_dir;
    std::filesystem::create_directories(cfg.output.dir);
    const Run run{cfg, cfg.output.dir, out};
    return it->second(run);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ConvergenceError& e) {
    err << "convergence error: " << e.what() << " (achieved " << e.achieved() << ")\n";
    return kExitConvergence;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailed;
  }
}

}  // namespace qnoise
