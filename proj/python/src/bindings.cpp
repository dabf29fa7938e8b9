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

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qnoise/analysis.hpp"
#include "qnoise/averaging.hpp"
#include "qnoise/closed_form.hpp"
#include "qnoise/commands.hpp"
#include "qnoise/errors.hpp"
#include "qnoise/noise_density.hpp"
#include "qnoise/qubit.hpp"

namespace py = pybind11;
using namespace qnoise;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Noise-averaged two-level dynamics";
  m.attr("__version__") = QNOISE_VERSION;

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_RuntimeError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<FloorReached>(m, "FloorReached", PyExc_RuntimeError);

  py::class_<DensityMatrix>(m, "DensityMatrix")
      .def(py::init<>())
      .def(py::init([](double rho11, std::complex<double> rho12) { return DensityMatrix{rho11, rho12}; }),
           py::arg("rho11"), py::arg("rho12") = std::complex<double>{})
      .def_readwrite("rho11", &DensityMatrix::rho11)
      .def_readwrite("rho12", &DensityMatrix::rho12)
      .def_property_readonly("rho22", &DensityMatrix::rho22)
      .def_property_readonly("rho21", &DensityMatrix::rho21)
      .def("is_positive", &DensityMatrix::is_positive, py::arg("tol") = 1e-12)
      .def_static("maximally_mixed", &DensityMatrix::maximally_mixed)
      .def_static("pure", &DensityMatrix::pure, py::arg("a1"), py::arg("a2"))
      .def("__repr__", [](const DensityMatrix& r) {
        return "DensityMatrix(rho11=" + std::to_string(r.rho11) + ", rho12=(" +
               std::to_string(r.rho12.real()) + "," + std::to_string(r.rho12.imag()) + "))";
      });

  py::class_<FrozenHamiltonian>(m, "FrozenHamiltonian")
      .def(py::init([](double a, double b, double z) { return FrozenHamiltonian{a, b, z}; }),
           py::arg("a"), py::arg("b"), py::arg("z"))
      .def_readwrite("a", &FrozenHamiltonian::a)
      .def_readwrite("b", &FrozenHamiltonian::b)
      .def_readwrite("z", &FrozenHamiltonian::z);

  m.def("evolve_oracle", &evolve_oracle, py::arg("h"), py::arg("rho0"), py::arg("t"));
  m.def("purity", &purity);
  m.def("frobenius_distance", &frobenius_distance);

  py::class_<NoiseCoordinates>(m, "NoiseCoordinates")
      .def(py::init([](double x, double y, double eps) { return NoiseCoordinates{x, y, eps}; }),
           py::arg("x") = 0.0, py::arg("y") = 0.0, py::arg("eps") = 1.0)
      .def_readwrite("x", &NoiseCoordinates::x)
      .def_readwrite("y", &NoiseCoordinates::y)
      .def_readwrite("eps", &NoiseCoordinates::eps)
      .def("hamiltonian", &NoiseCoordinates::hamiltonian);

  py::class_<PhaseData>(m, "PhaseData")
      .def_readonly("P", &PhaseData::P)
      .def_readonly("R", &PhaseData::R)
      .def_readonly("phase", &PhaseData::phase);
  m.def("phase_data", &phase_data);

  py::class_<StationaryCoeffs>(m, "StationaryCoeffs")
      .def_readonly("f_alpha", &StationaryCoeffs::f_alpha)
      .def_readonly("f_beta", &StationaryCoeffs::f_beta)
      .def_readonly("f_gamma", &StationaryCoeffs::f_gamma);
  m.def("stationary_coeffs", &stationary_coeffs, py::arg("R"));
  m.def("rho_t", &rho_t, py::arg("rho0"), py::arg("coords"), py::arg("t"));

  py::class_<NoiseDensity>(m, "NoiseDensity")
      .def_static("zero", &NoiseDensity::zero)
      .def_static("poly_bump", &NoiseDensity::poly_bump, py::arg("n"), py::arg("half_width"))
      .def_static("smooth_bump", &NoiseDensity::smooth_bump, py::arg("half_width"))
      .def_static("ir_poly_bump", &NoiseDensity::ir_poly_bump, py::arg("k"), py::arg("n"),
                  py::arg("half_width"))
      .def_static("shifted_bump", &NoiseDensity::shifted_bump, py::arg("center"),
                  py::arg("half_width"), py::arg("n"))
      .def_static("mirrored_bump", &NoiseDensity::mirrored_bump, py::arg("center"),
                  py::arg("half_width"), py::arg("n"))
      .def("pdf", &NoiseDensity::pdf)
      .def("is_even", &NoiseDensity::is_even)
      .def("is_point_mass", &NoiseDensity::is_point_mass)
      .def("describe", &NoiseDensity::describe)
      .def("__repr__", &NoiseDensity::describe);
  m.def("sample", &sample, py::arg("density"), py::arg("seed"), py::arg("count"),
        py::arg("stream") = 0);
  m.def("fourier", &fourier, py::arg("density"), py::arg("t"));
  m.def("moment", &moment, py::arg("density"), py::arg("m"));
  m.def("scaled_inverse_moment", &scaled_inverse_moment, py::arg("density"), py::arg("eps"),
        py::arg("m"));
  m.def("inverse_power_moment", &inverse_power_moment, py::arg("density"), py::arg("eps"),
        py::arg("m"));

  py::class_<NoiseModel>(m, "NoiseModel")
      .def(py::init([](double eps, const NoiseDensity& mu_o, const NoiseDensity& mu_d) {
             return NoiseModel{eps, mu_o, mu_d};
           }),
           py::arg("eps") = 1.0, py::arg("mu_o") = NoiseDensity::zero(),
           py::arg("mu_d") = NoiseDensity::zero())
      .def_readwrite("eps", &NoiseModel::eps)
      .def_readwrite("mu_o", &NoiseModel::mu_o)
      .def_readwrite("mu_d", &NoiseModel::mu_d)
      .def("describe", &NoiseModel::describe);

  py::enum_<AveragingMode>(m, "AveragingMode")
      .value("quadrature", AveragingMode::quadrature)
      .value("monte_carlo", AveragingMode::monte_carlo);

  py::class_<QuadratureSpec>(m, "QuadratureSpec")
      .def(py::init<>())
      .def_readwrite("base_order", &QuadratureSpec::base_order)
      .def_readwrite("panels_per_unit_phase", &QuadratureSpec::panels_per_unit_phase)
      .def_readwrite("tolerance", &QuadratureSpec::tolerance)
      .def_readwrite("coefficient_tolerance", &QuadratureSpec::coefficient_tolerance)
      .def_readwrite("mode", &QuadratureSpec::mode)
      .def_readwrite("samples", &QuadratureSpec::samples)
      .def_readwrite("seed", &QuadratureSpec::seed)
      .def_readwrite("threads", &QuadratureSpec::threads);

  py::class_<FinalStateCoeffs>(m, "FinalStateCoeffs")
      .def(py::init([](double a, double b, double g) { return FinalStateCoeffs{a, b, g, 0.0}; }),
           py::arg("alpha"), py::arg("beta"), py::arg("gamma"))
      .def_readonly("alpha", &FinalStateCoeffs::alpha)
      .def_readonly("beta", &FinalStateCoeffs::beta)
      .def_readonly("gamma", &FinalStateCoeffs::gamma)
      .def_readonly("error_estimate", &FinalStateCoeffs::error_estimate);

  py::class_<AveragedState>(m, "AveragedState")
      .def_readonly("rho", &AveragedState::rho)
      .def_readonly("error_estimate", &AveragedState::error_estimate)
      .def_readonly("standard_error", &AveragedState::standard_error);

  const QuadratureSpec default_spec;
  m.def("expected_rho", &expected_rho, py::arg("model"), py::arg("rho0"), py::arg("t"),
        py::arg("spec") = default_spec);
  m.def("final_state_coeffs", &final_state_coeffs, py::arg("model"), py::arg("spec") = default_spec);
  m.def("final_state", &final_state, py::arg("coeffs"), py::arg("rho0"), py::arg("tol") = 1e-9);

  py::class_<DecaySeries>(m, "DecaySeries")
      .def(py::init<>())
      .def_readwrite("times", &DecaySeries::times)
      .def_readwrite("deviations", &DecaySeries::deviations)
      .def_readwrite("error_estimates", &DecaySeries::error_estimates)
      .def_readwrite("dev_rho11", &DecaySeries::dev_rho11)
      .def_readwrite("dev_re_rho12", &DecaySeries::dev_re_rho12)
      .def_readwrite("dev_im_rho12", &DecaySeries::dev_im_rho12)
      .def_readonly("non_convergent", &DecaySeries::non_convergent)
      .def_readonly("floor_flagged", &DecaySeries::floor_flagged);
  m.def("log_time_grid", &log_time_grid, py::arg("t_min"), py::arg("t_max"),
        py::arg("points_per_decade"));
  m.def("deviation_series", &deviation_series, py::arg("model"), py::arg("rho0"), py::arg("times"),
        py::arg("spec") = default_spec);

  py::class_<FitWindow>(m, "FitWindow")
      .def(py::init([](double lo, double hi) { return FitWindow{lo, hi}; }), py::arg("t_min") = 1e2,
           py::arg("t_max") = 1e4)
      .def_readwrite("t_min", &FitWindow::t_min)
      .def_readwrite("t_max", &FitWindow::t_max);
  py::class_<RateFit>(m, "RateFit")
      .def_readonly("exponent", &RateFit::exponent)
      .def_readonly("intercept", &RateFit::intercept)
      .def_readonly("r_squared", &RateFit::r_squared)
      .def_readonly("exponent_stderr", &RateFit::exponent_stderr)
      .def_readonly("n_envelope_points", &RateFit::n_envelope_points)
      .def_readonly("envelope_fallback", &RateFit::envelope_fallback);
  m.def("fit_power_law", &fit_power_law, py::arg("series"), py::arg("window") = FitWindow{});

  py::enum_<Regime>(m, "Regime")
      .value("weak", Regime::weak)
      .value("intermediate", Regime::intermediate)
      .value("strong", Regime::strong);
  py::class_<RegimeReport>(m, "RegimeReport")
      .def_readonly("regime", &RegimeReport::regime)
      .def_readonly("nu1", &RegimeReport::nu1)
      .def_readonly("nu2", &RegimeReport::nu2)
      .def_readonly("computed", &RegimeReport::computed)
      .def_readonly("has_expansion", &RegimeReport::has_expansion)
      .def_readonly("alpha_lead", &RegimeReport::alpha_lead)
      .def_readonly("beta_lead", &RegimeReport::beta_lead)
      .def_readonly("gamma_lead", &RegimeReport::gamma_lead)
      .def_readonly("alpha_residual", &RegimeReport::alpha_residual)
      .def_readonly("beta_residual", &RegimeReport::beta_residual)
      .def_readonly("gamma_residual", &RegimeReport::gamma_residual);
  m.def("classify", &classify);
  m.def("regime_report",
        py::overload_cast<const NoiseModel&, const QuadratureSpec&>(&regime_report),
        py::arg("model"), py::arg("spec") = default_spec);

  py::class_<DephasingDistances>(m, "DephasingDistances")
      .def_readonly("energy_basis", &DephasingDistances::energy_basis)
      .def_readonly("delocalized_basis", &DephasingDistances::delocalized_basis);
  m.def("dephasing_distance",
        py::overload_cast<const NoiseModel&, const DensityMatrix&, const QuadratureSpec&>(
            &dephasing_distance),
        py::arg("model"), py::arg("rho0"), py::arg("spec") = default_spec);

  m.def("validate", [] {
    py::list out;
    for (const CheckResult& c : run_validation_suite()) {
      out.append(py::make_tuple(c.name, c.passed, c.detail));
    }
    return out;
  }, "Runs the built-in invariant checks; returns (name, passed, detail) tuples.");
}
