// Copyright 2026 The Moyal Authors
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

#include "config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <initializer_list>

#include <nlohmann/json.hpp>

#include "moyal/diagnostics.hpp"
#include "moyal/io.hpp"

namespace moyal::cli {
namespace {

using json = nlohmann::json;

[[noreturn]] void bad(const std::string& path, const std::string& msg) {
  throw ValidationError("config: " + path + ": " + msg);
}

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

void require_object(const json& j, const std::string& path) {
  if (!j.is_object()) bad(path, "expected an object");
}

void check_keys(const json& j, const std::string& path, std::initializer_list<const char*> allowed) {
  for (const auto& [key, value] : j.items()) {
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; })) {
      std::string list;
      for (const char* a : allowed) list += std::string(list.empty() ? "" : ", ") + a;
      bad(join(path, key), "unknown key (expected one of: " + list + ")");
    }
  }
}

double number(const json& j, const std::string& path) {
  if (!j.is_number()) bad(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) bad(path, "must be finite");
  return v;
}

double positive(const json& j, const std::string& path) {
  const double v = number(j, path);
  if (!(v > 0.0)) bad(path, "must be > 0");
  return v;
}

std::size_t count(const json& j, const std::string& path, std::size_t min) {
  if (!j.is_number_integer() || j.get<long long>() < static_cast<long long>(min)) {
    bad(path, "expected an integer >= " + std::to_string(min));
  }
  return j.get<std::size_t>();
}

PhasePoint pair(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2) bad(path, "expected [q, p]");
  return {number(j[0], path + "[0]"), number(j[1], path + "[1]")};
}

std::string text(const json& j, const std::string& path) {
  if (!j.is_string()) bad(path, "expected a string");
  return j.get<std::string>();
}

bool boolean(const json& j, const std::string& path) {
  if (!j.is_boolean()) bad(path, "expected true or false");
  return j.get<bool>();
}

// "line L, column C" for a byte offset into the text.
std::string locate(const std::string& src, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < std::min(byte, src.size()); ++i) {
    if (src[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

LatticeBlock parse_lattice(const json& j) {
  const std::string path = "lattice";
  require_object(j, path);
  check_keys(j, path, {"n_points", "q_min", "q_max", "hbar"});
  for (const char* key : {"n_points", "q_min", "q_max"}) {
    if (!j.contains(key)) bad(join(path, key), "required");
  }
  LatticeBlock b;
  b.q_min = number(j["q_min"], "lattice.q_min");
  b.q_max = number(j["q_max"], "lattice.q_max");
  if (!j.contains("hbar")) {
    b.hbar = {1.0};
  } else if (j["hbar"].is_array()) {
    if (j["hbar"].empty()) bad("lattice.hbar", "empty list");
    for (std::size_t i = 0; i < j["hbar"].size(); ++i) {
      b.hbar.push_back(positive(j["hbar"][i], "lattice.hbar[" + std::to_string(i) + "]"));
    }
  } else {
    b.hbar = {positive(j["hbar"], "lattice.hbar")};
  }
  const json& n = j["n_points"];
  if (n.is_array()) {
    if (n.size() != b.hbar.size()) bad("lattice.n_points", "list length must match lattice.hbar");
    for (std::size_t i = 0; i < n.size(); ++i) {
      b.n_points.push_back(count(n[i], "lattice.n_points[" + std::to_string(i) + "]", 8));
    }
  } else {
    b.n_points = {count(n, "lattice.n_points", 8)};
  }
  try {
    b.lattices();
  } catch (const ValidationError& e) {
    bad(path, e.what());
  }
  return b;
}

HamiltonianSpec parse_system(const json& j) {
  const std::string path = "system";
  require_object(j, path);
  check_keys(j, path, {"potential", "parameters", "coefficients"});
  if (!j.contains("potential")) bad("system.potential", "required");
  const std::string name = text(j["potential"], "system.potential");
  try {
    if (name == "polynomial") {
      if (!j.contains("coefficients")) bad("system.coefficients", "required for polynomial");
      const json& c = j["coefficients"];
      if (!c.is_array()) bad("system.coefficients", "expected a list of numbers");
      std::vector<double> coeffs;
      for (std::size_t i = 0; i < c.size(); ++i) {
        coeffs.push_back(number(c[i], "system.coefficients[" + std::to_string(i) + "]"));
      }
      return polynomial_spec(coeffs);
    }
    if (j.contains("coefficients")) bad("system.coefficients", "only valid for polynomial");
    std::map<std::string, double> params;
    if (j.contains("parameters")) {
      require_object(j["parameters"], "system.parameters");
      for (const auto& [key, value] : j["parameters"].items()) {
        params[key] = number(value, "system.parameters." + key);
      }
    }
    return make_hamiltonian_spec(name, params);
  } catch (const ValidationError& e) {
    const std::string what = e.what();
    if (what.rfind("config:", 0) == 0) throw;
    bad(path, what);
  }
}

StateBlock parse_state(const json& j) {
  const std::string path = "state";
  require_object(j, path);
  check_keys(j, path, {"kind", "level", "x0"});
  StateBlock s;
  if (j.contains("kind")) s.kind = text(j["kind"], "state.kind");
  if (s.kind != "gaussian" && s.kind != "oscillator") {
    bad("state.kind", "expected gaussian or oscillator");
  }
  if (j.contains("level")) {
    if (s.kind != "oscillator") bad("state.level", "only valid for kind oscillator");
    s.level = static_cast<int>(count(j["level"], "state.level", 0));
  }
  if (j.contains("x0")) s.x0 = pair(j["x0"], "state.x0");
  return s;
}

ExperimentBlock parse_experiment(const json& j) {
  const std::string path = "experiment";
  require_object(j, path);
  check_keys(j, path,
             {"x0", "v", "t_max", "fit_window", "n_samples", "epsilon", "n_angles",
              "tomogram_input", "egorov_time", "clip_to_escape", "delta_fd", "richardson",
              "norm_weights"});
  ExperimentBlock e;
  if (j.contains("x0")) e.x0 = pair(j["x0"], "experiment.x0");
  if (j.contains("v")) {
    const PhasePoint v = pair(j["v"], "experiment.v");
    const double norm = std::hypot(v.q, v.p);
    if (!(norm > 0.0)) bad("experiment.v", "must be nonzero");
    e.v = {v.q / norm, v.p / norm};
    if (std::abs(norm - 1.0) > 1e-12) {
      char buf[160];
      std::snprintf(buf, sizeof buf, "config: experiment.v had norm %.6g; normalized to [%.6g, %.6g]",
                    norm, e.v.q, e.v.p);
      warn(buf);
    }
  }
  if (j.contains("t_max")) e.t_max = positive(j["t_max"], "experiment.t_max");
  if (j.contains("fit_window")) {
    const PhasePoint w = pair(j["fit_window"], "experiment.fit_window");
    if (!(w.q >= 0.0 && w.p > w.q)) bad("experiment.fit_window", "expected [t_lo, t_hi], 0 <= t_lo < t_hi");
    if (w.p > e.t_max) bad("experiment.fit_window", "t_hi exceeds experiment.t_max");
    e.fit_window = FitWindow{w.q, w.p};
  }
  if (j.contains("n_samples")) e.n_samples = count(j["n_samples"], "experiment.n_samples", 11);
  if (j.contains("epsilon")) {
    const double eps = number(j["epsilon"], "experiment.epsilon");
    if (eps < 0.0) bad("experiment.epsilon", "must be >= 0");
    e.epsilon = eps;
  }
  if (j.contains("n_angles")) e.n_angles = count(j["n_angles"], "experiment.n_angles", 2);
  if (j.contains("tomogram_input")) {
    e.tomogram_input = text(j["tomogram_input"], "experiment.tomogram_input");
  }
  if (j.contains("egorov_time")) e.egorov_time = number(j["egorov_time"], "experiment.egorov_time");
  if (e.egorov_time < 0.0) bad("experiment.egorov_time", "must be >= 0");
  if (j.contains("clip_to_escape")) {
    e.clip_to_escape = boolean(j["clip_to_escape"], "experiment.clip_to_escape");
  }
  if (j.contains("delta_fd")) e.gradient.delta_fd = positive(j["delta_fd"], "experiment.delta_fd");
  if (j.contains("richardson")) e.gradient.richardson = boolean(j["richardson"], "experiment.richardson");
  if (j.contains("norm_weights")) {
    const PhasePoint w = pair(j["norm_weights"], "experiment.norm_weights");
    if (!(w.q > 0.0 && w.p > 0.0)) bad("experiment.norm_weights", "weights must be > 0");
    e.gradient.q_weight = w.q;
    e.gradient.p_weight = w.p;
  }
  return e;
}

OutputBlock parse_output(const json& j) {
  const std::string path = "output";
  require_object(j, path);
  check_keys(j, path, {"directory", "formats"});
  OutputBlock o;
  if (j.contains("directory")) o.directory = text(j["directory"], "output.directory");
  if (o.directory.empty()) bad("output.directory", "must not be empty");
  if (j.contains("formats")) {
    const json& f = j["formats"];
    if (!f.is_array() || f.empty()) bad("output.formats", "expected a nonempty list");
    o.csv = o.binary = false;
    for (std::size_t i = 0; i < f.size(); ++i) {
      const std::string p = "output.formats[" + std::to_string(i) + "]";
      const std::string s = text(f[i], p);
      if (s == "csv") {
        o.csv = true;
      } else if (s == "binary") {
        o.binary = true;
      } else {
        bad(p, "expected csv or binary");
      }
    }
  }
  return o;
}

}  // namespace

std::vector<Lattice> LatticeBlock::lattices() const {
  std::vector<Lattice> out;
  for (std::size_t i = 0; i < hbar.size(); ++i) {
    const std::size_t n = n_points.size() == 1 ? n_points[0] : n_points.at(i);
    out.push_back(make_lattice(n, q_min, q_max, hbar[i]));
  }
  return out;
}

RunConfig parse_config(const std::string& src) {
  json j;
  try {
    j = json::parse(src, nullptr, true, true);
  } catch (const json::parse_error& e) {
    throw ValidationError("config: syntax error at " + locate(src, e.byte) + ": " + e.what());
  }
  require_object(j, "(top level)");
  check_keys(j, "", {"lattice", "system", "state", "experiment", "output"});
  if (!j.contains("lattice")) bad("lattice", "required");
  RunConfig c;
  c.lattice = parse_lattice(j["lattice"]);
  if (j.contains("system")) c.system = parse_system(j["system"]);
  if (j.contains("state")) c.state = parse_state(j["state"]);
  if (j.contains("experiment")) c.experiment = parse_experiment(j["experiment"]);
  if (j.contains("output")) c.output = parse_output(j["output"]);
  c.hash = io::config_hash(src);
  return c;
}

RunConfig load_config(const std::string& path) {
  std::string src;
  try {
    src = io::read_file(path);
  } catch (const Error& e) {
    throw ValidationError(std::string("config: ") + e.what());
  }
  return parse_config(src);
}

}  // namespace moyal::cli
