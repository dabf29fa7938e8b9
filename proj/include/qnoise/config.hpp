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

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "qnoise/analysis.hpp"
#include "qnoise/averaging.hpp"
#include "qnoise/closed_form.hpp"

namespace qnoise {

struct TimeGrid {
  double t_min{1.0};
  double t_max{1e4};
  std::string spacing{"log"};  // log | linear
  int points_per_decade{40};   // log spacing
  int points{101};             // linear spacing

  std::vector<double> times() const;
};

struct OutputSpec {
  std::string dir{"."};
  std::string prefix{"qnoise"};
};

/// Everything one command needs. The seed here is the single source of
/// randomness; quadrature.seed mirrors it after parsing.
struct ExperimentConfig {
  NoiseModel model;
  DensityMatrix initial_state{1.0, {0.0, 0.0}};
  double frozen_x{0.0};
  double frozen_y{0.0};
  TimeGrid time_grid;
  QuadratureSpec quadrature;
  FitWindow fit_window;
  std::uint64_t seed{0};
  OutputSpec output;
};

/// Throws ConfigError. Syntax errors carry the line and column in the
/// message and "<document>" as the field; semantic errors carry the dotted
/// field path (e.g. "model.mu_o.half_width").
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);

nlohmann::json to_json(const ExperimentConfig& c);
nlohmann::json to_json(const NoiseDensity& d);
/// Parses one density block; `path` prefixes error fields.
NoiseDensity density_from_json(const nlohmann::json& j, const std::string& path);

}  // namespace qnoise
