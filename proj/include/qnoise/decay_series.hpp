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

#include <iosfwd>
#include <string>
#include <vector>

namespace qnoise {

/// Deviation of the averaged state from its limit along a time grid.
/// `deviations` is the Frobenius norm; the three component columns are the
/// signed entries of E[rho(t)] - rho_bar.
struct DecaySeries {
  std::vector<double> times;
  std::vector<double> deviations;
  std::vector<double> error_estimates;
  std::vector<double> dev_rho11;
  std::vector<double> dev_re_rho12;
  std::vector<double> dev_im_rho12;
  bool non_convergent{false};
  // Points whose error estimate is not 10x below the deviation.
  std::size_t floor_flagged{0};

  std::size_t size() const noexcept { return times.size(); }
  /// Throws std::invalid_argument if lengths differ or times are not
  /// strictly increasing.
  void validate() const;
};

/// Log-spaced grid from t_min to t_max inclusive with the given density.
std::vector<double> log_time_grid(double t_min, double t_max, int points_per_decade);
std::vector<double> linear_time_grid(double t_min, double t_max, int points);

/// Columns: t, dev_frobenius, dev_rho11, dev_re_rho12, dev_im_rho12,
/// quad_error_estimate. 17 significant digits.
void write_csv(std::ostream& os, const DecaySeries& s);
std::string format_double(double v);

}  // namespace qnoise
