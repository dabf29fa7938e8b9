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

#include <gtest/gtest.h>

#include "qnoise/config.hpp"
#include "qnoise/errors.hpp"

namespace qnoise {
namespace {

std::string field_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.field();
  }
  return "<no error>";
}

constexpr const char* kFull = R"({
  "model": {
    "eps": 2.0,
    "mu_o": {"family": "shifted_bump", "center": 11.0, "half_width": 1.0, "n": 2},
    "mu_d": {"family": "ir_poly_bump", "k": 3, "n": 2, "half_width": 0.3}
  },
  "initial_state": {"rho11": 0.7, "re_rho12": 0.1, "im_rho12": 0.2},
  "frozen": {"x": 0.5, "y": -0.1},
  "time_grid": {"t_min": 0.0, "t_max": 20.0, "spacing": "linear", "points": 21},
  "quadrature": {"base_order": 16, "tolerance": 1e-7, "mode": "monte_carlo", "samples": 1000,
                 "threads": 2},
  "fit_window": {"t_min": 10.0, "t_max": 1000.0},
  "seed": 99,
  "output": {"dir": "o", "prefix": "p"}
})";

TEST(Config, MinimalUsesDefaults) {
  const ExperimentConfig c = parse_config(R"({"model": {"eps": 1.0}})");
  EXPECT_EQ(c.model.eps, 1.0);
  EXPECT_TRUE(c.model.mu_o.is_point_mass());
  EXPECT_TRUE(c.model.mu_d.is_point_mass());
  EXPECT_EQ(c.initial_state.rho11, 1.0);
  EXPECT_EQ(c.time_grid.spacing, "log");
  EXPECT_EQ(c.quadrature.base_order, 12);
  EXPECT_EQ(c.fit_window.t_min, 1e2);
  EXPECT_EQ(c.output.prefix, "qnoise");
}

TEST(Config, FullDocument) {
  const ExperimentConfig c = parse_config(kFull);
  EXPECT_EQ(c.model.mu_o.family(), DensityFamily::shifted_bump);
  EXPECT_EQ(c.model.mu_o.center(), 11.0);
  EXPECT_EQ(c.model.mu_d.k(), 3);
  EXPECT_EQ(c.initial_state.rho12, complex(0.1, 0.2));
  EXPECT_EQ(c.frozen_x, 0.5);
  EXPECT_EQ(c.frozen_y, -0.1);
  EXPECT_EQ(c.time_grid.times().size(), 21u);
  EXPECT_EQ(c.quadrature.mode, AveragingMode::monte_carlo);
  EXPECT_EQ(c.quadrature.samples, 1000u);
  EXPECT_EQ(c.quadrature.seed, 99u);
  EXPECT_EQ(c.quadrature.threads, 2);
  EXPECT_EQ(c.fit_window.t_max, 1000.0);
  EXPECT_EQ(c.output.dir, "o");
}

TEST(Config, RoundTrip) {
  const ExperimentConfig a = parse_config(kFull);
  const nlohmann::json j = to_json(a);
  const ExperimentConfig b = parse_config(j.dump());
  EXPECT_EQ(to_json(b), j);
  EXPECT_EQ(b.model.describe(), a.model.describe());
}

TEST(Config, LogGridTimes) {
  const ExperimentConfig c = parse_config(
      R"({"model": {"eps": 1.0}, "time_grid": {"t_min": 1, "t_max": 1000, "points_per_decade": 10}})");
  const auto t = c.time_grid.times();
  ASSERT_EQ(t.size(), 31u);
  EXPECT_DOUBLE_EQ(t.front(), 1.0);
  EXPECT_DOUBLE_EQ(t.back(), 1000.0);
}

TEST(Config, ErrorsNameTheField) {
  EXPECT_EQ(field_of(R"({"model": {"eps": 1.0, "mu_d": {"family": "poly_bump", "n": 2, "half_width": 1.5}}})"),
            "model.mu_d");
  EXPECT_EQ(field_of(R"({"model": {"eps": 1.0, "mu_o": {"family": "poly_bump", "n": 2, "halfwidth": 0.3}}})"),
            "model.mu_o.halfwidth");
  EXPECT_EQ(field_of(R"({"model": {"eps": -1.0}})"), "model.eps");
  EXPECT_EQ(field_of(R"({"model": {"eps": 1.0, "mu_o": {"family": "gaussian"}}})"), "model.mu_o.family");
  EXPECT_EQ(field_of(R"({"model": {"eps": 1.0}, "initial_state": {"rho11": 1.5}})"), "initial_state");
  EXPECT_EQ(field_of(R"({"model": {"eps": 1.0}, "quadrature": {"threads": 0}})"), "quadrature.threads");
  EXPECT_EQ(field_of(R"({"model": {"eps": 1.0}, "time_grid": {"spacing": "cubic"}})"), "time_grid.spacing");
  EXPECT_EQ(field_of(R"({"model": {"eps": 1.0}, "seed": -3})"), "seed");
  EXPECT_EQ(field_of(R"({"model": {"eps": 1.0}, "extra": 1})"), "extra");
  EXPECT_EQ(field_of(R"({"model": {"eps": "one"}})"), "model.eps");
}

TEST(Config, SyntaxErrorCarriesPosition) {
  try {
    parse_config("{\n  \"model\": {\n    \"eps\": 1.0\n    \"mu_o\": {}\n  }\n}");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.field(), "<document>");
    EXPECT_NE(std::string(e.what()).find("line 4"), std::string::npos) << e.what();
  }
}

TEST(Config, MissingFile) {
  EXPECT_THROW(load_config("/nonexistent/qnoise.json"), ConfigError);
}

TEST(Config, DensityJson) {
  for (const NoiseDensity& d : {NoiseDensity::zero(), NoiseDensity::poly_bump(3, 0.4),
                                NoiseDensity::smooth_bump(0.5), NoiseDensity::ir_poly_bump(1, 2, 0.3),
                                NoiseDensity::mirrored_bump(10.0, 1.0, 2)}) {
    const NoiseDensity e = density_from_json(to_json(d), "x");
    EXPECT_EQ(e.describe(), d.describe());
  }
}

}  // namespace
}  // namespace qnoise
