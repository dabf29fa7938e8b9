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

#include "qnoise/decay_series.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace qnoise {

void DecaySeries::validate() const {
  const std::size_t n = times.size();
  if (deviations.size() != n || error_estimates.size() != n) {
    throw std::invalid_argument("DecaySeries: column lengths differ");
  }
  for (const auto* col : {&dev_rho11, &dev_re_rho12, &dev_im_rho12}) {
    if (!col->empty() && col->size() != n) {
      throw std::invalid_argument("DecaySeries: component column length differs");
    }
  }
  for (std::size_t i = 1; i < n; ++i) {
    if (!(times[i] > times[i - 1])) {
      throw std::invalid_argument("DecaySeries: times not strictly increasing");
    }
  }
}

std::vector<double> log_time_grid(double t_min, double t_max, int points_per_decade) {
  if (!(t_min > 0.0) || !(t_max > t_min) || points_per_decade < 1) {
    throw std::invalid_argument("log_time_grid: need 0 < t_min < t_max and points_per_decade >= 1");
  }
  const double decades = std::log10(t_max / t_min);
  const int n = static_cast<int>(std::ceil(decades * points_per_decade - 1e-9));
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n + 1));
  for (int i = 0; i < n; ++i) {
    out.push_back(t_min * std::pow(10.0, static_cast<double>(i) / points_per_decade));
  }
  out.push_back(t_max);
  return out;
}

std::vector<double> linear_time_grid(double t_min, double t_max, int points) {
  if (!(t_min >= 0.0) || !(t_max > t_min) || points < 2) {
    throw std::invalid_argument("linear_time_grid: need 0 <= t_min < t_max and points >= 2");
  }
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) {
    out.push_back(i + 1 == points ? t_max : t_min + (t_max - t_min) * i / (points - 1));
  }
  return out;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_csv(std::ostream& os, const DecaySeries& s) {
  os << "t,dev_frobenius,dev_rho11,dev_re_rho12,dev_im_rho12,quad_error_estimate\n";
  auto at = [](const std::vector<double>& v, std::size_t i) { return i < v.size() ? v[i] : 0.0; };
  for (std::size_t i = 0; i < s.size(); ++i) {
    os << format_double(s.times[i]) << ',' << format_double(s.deviations[i]) << ','
       << format_double(at(s.dev_rho11, i)) << ',' << format_double(at(s.dev_re_rho12, i)) << ','
       << format_double(at(s.dev_im_rho12, i)) << ',' << format_double(s.error_estimates[i])
       << '\n';
  }
}

}  // namespace qnoise
