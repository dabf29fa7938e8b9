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

#include "qnoise/qubit.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qnoise/errors.hpp"

namespace qnoise {

bool DensityMatrix::is_positive(double tol) const noexcept {
  if (rho11 < -tol || rho11 > 1.0 + tol) return false;
  return std::norm(rho12) <= rho11 * rho22() + tol;
}

DensityMatrix DensityMatrix::pure(complex a1, complex a2) {
  const double n = std::norm(a1) + std::norm(a2);
  if (!(n > 0.0)) throw std::invalid_argument("DensityMatrix::pure: zero vector");
  return {std::norm(a1) / n, a1 * std::conj(a2) / n};
}

double FrozenHamiltonian::degeneracy_tolerance() const noexcept {
  return 1e-14 * std::max({std::abs(a), std::abs(b), std::abs(z), 1.0});
}

bool FrozenHamiltonian::degenerate() const noexcept {
  const double gap_sq = (a - b) * (a - b) + 4.0 * z * z;
  return gap_sq < degeneracy_tolerance();
}

SpectralData eigendecompose(const FrozenHamiltonian& h) {
  SpectralData out;
  const double mean = 0.5 * (h.a + h.b);
  if (h.degenerate()) {
    out.lambda1 = out.lambda2 = mean;
    out.identity_multiple = true;
    return out;
  }

  const double diff = h.a - h.b;
  const double gap = std::hypot(diff, 2.0 * h.z);
  out.lambda1 = mean + 0.5 * gap;
  out.lambda2 = mean - 0.5 * gap;

  if (h.z == 0.0) {
    // The general eigenvector formula is 0/0 here.
    if (diff >= 0.0) {
      out.psi1 = {1.0, 0.0};
      out.psi2 = {0.0, 1.0};
    } else {
      out.psi1 = {0.0, 1.0};
      out.psi2 = {1.0, 0.0};
    }
    return out;
  }

  // lambda_j - a, written without cancellation between diff and gap.
  const double z2 = h.z * h.z;
  const double shift1 = diff > 0.0 ? 2.0 * z2 / (gap + diff) : 0.5 * (gap - diff);
  const double shift2 = diff < 0.0 ? -2.0 * z2 / (gap - diff) : -0.5 * (gap + diff);

  const double n1 = std::hypot(h.z, shift1);
  const double n2 = std::hypot(h.z, shift2);
  out.psi1 = {h.z / n1, shift1 / n1};
  out.psi2 = {h.z / n2, shift2 / n2};
  return out;
}

namespace {

using Mat2 = std::array<std::array<complex, 2>, 2>;

Mat2 projector(const std::array<double, 2>& v) {
  return {{{v[0] * v[0], v[0] * v[1]}, {v[1] * v[0], v[1] * v[1]}}};
}

Mat2 mul(const Mat2& x, const Mat2& y) {
  Mat2 r{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r[i][j] = x[i][0] * y[0][j] + x[i][1] * y[1][j];
  return r;
}

}  // namespace

DensityMatrix evolve_oracle(const FrozenHamiltonian& h, const DensityMatrix& rho0, double t) {
  if (t < 0.0) throw DomainError("evolve_oracle: t must be >= 0");
  const SpectralData sd = eigendecompose(h);
  if (sd.identity_multiple || t == 0.0) return rho0;

  const Mat2 rho{{{rho0.rho11, rho0.rho12}, {rho0.rho21(), rho0.rho22()}}};
  const Mat2 p1 = projector(sd.psi1);
  const Mat2 p2 = projector(sd.psi2);
  const double omega = std::hypot(h.a - h.b, 2.0 * h.z);
  const complex phase = std::polar(1.0, -omega * t);

  const Mat2 a11 = mul(mul(p1, rho), p1);
  const Mat2 a22 = mul(mul(p2, rho), p2);
  const Mat2 a12 = mul(mul(p1, rho), p2);
  const Mat2 a21 = mul(mul(p2, rho), p1);

  auto entry = [&](int i, int j) {
    return a11[i][j] + a22[i][j] + phase * a12[i][j] + std::conj(phase) * a21[i][j];
  };
  return {entry(0, 0).real(), entry(0, 1)};
}

DelocalizedDensity to_delocalized(const DensityMatrix& rho) noexcept {
  return {0.5 + rho.rho12.real(), complex{rho.rho11 - 0.5, -rho.rho12.imag()}};
}

DensityMatrix from_delocalized(const DelocalizedDensity& rho) noexcept {
  // The basis change is an involution on the (rho11, rho12) parametrization.
  return {0.5 + rho.rho_pm.real(), complex{rho.rho_pp - 0.5, -rho.rho_pm.imag()}};
}

double purity(const DensityMatrix& rho) noexcept {
  return rho.rho11 * rho.rho11 + rho.rho22() * rho.rho22() + 2.0 * std::norm(rho.rho12);
}

double frobenius_distance(const DensityMatrix& rho_a, const DensityMatrix& rho_b) noexcept {
  const double d11 = rho_a.rho11 - rho_b.rho11;
  const double d12 = std::norm(rho_a.rho12 - rho_b.rho12);
  return std::sqrt(2.0 * d11 * d11 + 2.0 * d12);
}

}  // namespace qnoise
