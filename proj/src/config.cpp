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

#include "qnoise/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "qnoise/errors.hpp"

namespace qnoise {

using nlohmann::json;

namespace {

// Typed, path-aware access to one JSON object.
class Node {
 public:
  Node(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError(display(), "expected an object");
  }

  void allow(std::initializer_list<const char*> keys) const {
    std::set<std::string> ok(keys.begin(), keys.end());
    for (const auto& [k, v] : j_.items()) {
      if (!ok.count(k)) throw ConfigError(field(k), "unknown key");
    }
  }

  bool has(const char* key) const { return j_.contains(key); }

  Node child(const char* key) const {
    if (!has(key)) throw ConfigError(field(key), "missing");
    return Node(j_.at(key), field(key));
  }

  double number(const char* key) const {
    const json& v = get(key);
    if (!v.is_number()) throw ConfigError(field(key), "expected a number");
    return v.get<double>();
  }
  double number(const char* key, double dflt) const { return has(key) ? number(key) : dflt; }

  long long integer(const char* key) const {
    const json& v = get(key);
    if (!v.is_number_integer()) throw ConfigError(field(key), "expected an integer");
    return v.get<long long>();
  }
  long long integer(const char* key, long long dflt) const {
    return has(key) ? integer(key) : dflt;
  }

  std::string text(const char* key) const {
    const json& v = get(key);
    if (!v.is_string()) throw ConfigError(field(key), "expected a string");
    return v.get<std::string>();
  }
  std::string text(const char* key, const std::string& dflt) const {
    return has(key) ? text(key) : dflt;
  }

  std::string field(const std::string& key) const {
    return path_.empty() ? key : path_ + "." + key;
  }

 private:
  const json& get(const char* key) const {
    if (!has(key)) throw ConfigError(field(key), "missing");
    return j_.at(key);
  }
  std::string display() const { return path_.empty() ? "<document>" : path_; }

  const json& j_;
  std::string path_;
};

int to_int(long long v, const std::string& field) {
  if (v < -1000000000LL || v > 1000000000LL) throw ConfigError(field, "out of range");
  return static_cast<int>(v);
}

template <class F>
auto guarded(const std::string& field, F&& f) {
  try {
    return f();
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(field, e.what());
  }
}

}  // namespace

std::vector<double> TimeGrid::times() const {
  if (spacing == "log") return log_time_grid(t_min, t_max, points_per_decade);
  if (spacing == "linear") return linear_time_grid(t_min, t_max, points);
  throw ConfigError("time_grid.spacing", "expected 'log' or 'linear'");
}

NoiseDensity density_from_json(const json& j, const std::string& path) {
  const Node n(j, path);
  const std::string name = n.text("family");
  const DensityFamily fam =
      guarded(n.field("family"), [&] { return density_family_from_string(name); });
  return guarded(path, [&] {
    switch (fam) {
      case DensityFamily::zero:
        n.allow({"family"});
        return NoiseDensity::zero();
      case DensityFamily::poly_bump:
        n.allow({"family", "n", "half_width"});
        return NoiseDensity::poly_bump(to_int(n.integer("n"), n.field("n")),
                                       n.number("half_width"));
      case DensityFamily::smooth_bump:
        n.allow({"family", "half_width"});
        return NoiseDensity::smooth_bump(n.number("half_width"));
      case DensityFamily::ir_poly_bump:
        n.allow({"family", "k", "n", "half_width"});
        return NoiseDensity::ir_poly_bump(to_int(n.integer("k"), n.field("k")),
                                          to_int(n.integer("n"), n.field("n")),
                                          n.number("half_width"));
      case DensityFamily::shifted_bump:
        n.allow({"family", "center", "half_width", "n"});
        return NoiseDensity::shifted_bump(n.number("center"), n.number("half_width"),
                                          to_int(n.integer("n"), n.field("n")));
      case DensityFamily::mirrored_bump:
        n.allow({"family", "center", "half_width", "n"});
        return NoiseDensity::mirrored_bump(n.number("center"), n.number("half_width"),
                                           to_int(n.integer("n"), n.field("n")));
    }
    throw ConfigError(n.field("family"), "unsupported family");
  });
}

json to_json(const NoiseDensity& d) {
  json j;
  j["family"] = to_string(d.family());
  switch (d.family()) {
    case DensityFamily::zero:
      break;
    case DensityFamily::poly_bump:
      j["n"] = d.n();
      j["half_width"] = d.half_width();
      break;
    case DensityFamily::smooth_bump:
      j["half_width"] = d.half_width();
      break;
    case DensityFamily::ir_poly_bump:
      j["k"] = d.k();
      j["n"] = d.n();
      j["half_width"] = d.half_width();
      break;
    case DensityFamily::shifted_bump:
    case DensityFamily::mirrored_bump:
      j["center"] = d.center();
      j["half_width"] = d.half_width();
      j["n"] = d.n();
      break;
  }
  return j;
}

ExperimentConfig parse_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("<document>", e.what());
  }
  const Node root(doc, "");
  root.allow({"model", "initial_state", "frozen", "time_grid", "quadrature", "fit_window", "seed",
              "output"});

  ExperimentConfig c;
  {
    const Node m = root.child("model");
    m.allow({"eps", "mu_o", "mu_d"});
    c.model.eps = m.number("eps");
    c.model.mu_o = m.has("mu_o") ? density_from_json(doc["model"]["mu_o"], "model.mu_o")
                                 : NoiseDensity::zero();
    c.model.mu_d = m.has("mu_d") ? density_from_json(doc["model"]["mu_d"], "model.mu_d")
                                 : NoiseDensity::zero();
    if (!(c.model.eps > 0.0)) throw ConfigError("model.eps", "must be > 0");
    if (!(c.model.mu_d.max_abs() < c.model.eps)) {
      throw ConfigError("model.mu_d", "support must lie inside (-eps, eps)");
    }
  }
  if (root.has("initial_state")) {
    const Node s = root.child("initial_state");
    s.allow({"rho11", "re_rho12", "im_rho12"});
    c.initial_state = {s.number("rho11"), {s.number("re_rho12", 0.0), s.number("im_rho12", 0.0)}};
    if (c.initial_state.rho11 < 0.0 || c.initial_state.rho11 > 1.0 ||
        !c.initial_state.is_positive(1e-12)) {
      throw ConfigError("initial_state", "not a valid density matrix");
    }
  }
  if (root.has("frozen")) {
    const Node f = root.child("frozen");
    f.allow({"x", "y"});
    c.frozen_x = f.number("x", 0.0);
    c.frozen_y = f.number("y", 0.0);
    if (!(c.model.eps + c.frozen_y > 0.0)) throw ConfigError("frozen.y", "eps + y must be > 0");
  }
  if (root.has("time_grid")) {
    const Node g = root.child("time_grid");
    g.allow({"t_min", "t_max", "spacing", "points_per_decade", "points"});
    c.time_grid.t_min = g.number("t_min", c.time_grid.t_min);
    c.time_grid.t_max = g.number("t_max", c.time_grid.t_max);
    c.time_grid.spacing = g.text("spacing", c.time_grid.spacing);
    c.time_grid.points_per_decade =
        to_int(g.integer("points_per_decade", c.time_grid.points_per_decade),
               "time_grid.points_per_decade");
    c.time_grid.points = to_int(g.integer("points", c.time_grid.points), "time_grid.points");
    guarded("time_grid", [&] { return c.time_grid.times(); });
  }
  if (root.has("quadrature")) {
    const Node q = root.child("quadrature");
    q.allow({"base_order", "panels_per_unit_phase", "tolerance", "coefficient_tolerance", "mode",
             "samples", "threads"});
    auto& s = c.quadrature;
    s.base_order = to_int(q.integer("base_order", s.base_order), "quadrature.base_order");
    s.panels_per_unit_phase = q.number("panels_per_unit_phase", s.panels_per_unit_phase);
    s.tolerance = q.number("tolerance", s.tolerance);
    s.coefficient_tolerance = q.number("coefficient_tolerance", s.coefficient_tolerance);
    const std::string mode = q.text("mode", to_string(s.mode));
    s.mode = guarded("quadrature.mode", [&] { return averaging_mode_from_string(mode); });
    const long long samples = q.integer("samples", static_cast<long long>(s.samples));
    if (samples < 2) throw ConfigError("quadrature.samples", "must be >= 2");
    s.samples = static_cast<std::size_t>(samples);
    s.threads = to_int(q.integer("threads", s.threads), "quadrature.threads");
    try {
      s.validate();
    } catch (const ConfigError& e) {
      const std::string msg = e.what();
      throw ConfigError("quadrature." + e.field(), msg.substr(e.field().size() + 2));
    }
  }
  if (root.has("fit_window")) {
    const Node w = root.child("fit_window");
    w.allow({"t_min", "t_max"});
    c.fit_window.t_min = w.number("t_min", c.fit_window.t_min);
    c.fit_window.t_max = w.number("t_max", c.fit_window.t_max);
    if (!(c.fit_window.t_min > 0.0) || !(c.fit_window.t_max > c.fit_window.t_min)) {
      throw ConfigError("fit_window", "need 0 < t_min < t_max");
    }
  }
  if (root.has("seed")) {
    const json& s = doc["seed"];
    if (!s.is_number_unsigned() && !(s.is_number_integer() && s.get<long long>() >= 0)) {
      throw ConfigError("seed", "expected a non-negative integer");
    }
    c.seed = s.get<std::uint64_t>();
  }
  c.quadrature.seed = c.seed;
  if (root.has("output")) {
    const Node o = root.child("output");
    o.allow({"dir", "prefix"});
    c.output.dir = o.text("dir", c.output.dir);
    c.output.prefix = o.text("prefix", c.output.prefix);
  }
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("<file>", "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

json to_json(const ExperimentConfig& c) {
  json j;
  j["model"] = {{"eps", c.model.eps}, {"mu_o", to_json(c.model.mu_o)},
                {"mu_d", to_json(c.model.mu_d)}};
  j["initial_state"] = {{"rho11", c.initial_state.rho11},
                        {"re_rho12", c.initial_state.rho12.real()},
                        {"im_rho12", c.initial_state.rho12.imag()}};
  j["frozen"] = {{"x", c.frozen_x}, {"y", c.frozen_y}};
  j["time_grid"] = {{"t_min", c.time_grid.t_min},
                    {"t_max", c.time_grid.t_max},
                    {"spacing", c.time_grid.spacing},
                    {"points_per_decade", c.time_grid.points_per_decade},
                    {"points", c.time_grid.points}};
  const auto& q = c.quadrature;
  j["quadrature"] = {{"base_order", q.base_order},
                     {"panels_per_unit_phase", q.panels_per_unit_phase},
                     {"tolerance", q.tolerance},
                     {"coefficient_tolerance", q.coefficient_tolerance},
                     {"mode", to_string(q.mode)},
                     {"samples", q.samples},
                     {"threads", q.threads}};
  j["fit_window"] = {{"t_min", c.fit_window.t_min}, {"t_max", c.fit_window.t_max}};
  j["seed"] = c.seed;
  j["output"] = {{"dir", c.output.dir}, {"prefix", c.output.prefix}};
  return j;
}

}  // namespace qnoise
