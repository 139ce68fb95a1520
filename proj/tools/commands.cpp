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

#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <numbers>

#include <nlohmann/json.hpp>

#include "moyal/classical.hpp"
#include "moyal/diagnostics.hpp"
#include "moyal/dynamics.hpp"
#include "moyal/io.hpp"
#include "moyal/tomography.hpp"
#include "moyal/weyl.hpp"

namespace moyal::cli {
namespace {

using json = nlohmann::json;

json finite_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

std::string hbar_tag(double hbar) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "hbar%g", hbar);
  return buf;
}

const Lattice& single_lattice(const std::vector<Lattice>& lattices, const char* cmd) {
  if (lattices.size() != 1) {
    throw ValidationError(std::string("config: lattice.hbar: ") + cmd +
                          " takes a single hbar value");
  }
  return lattices.front();
}

const HamiltonianSpec& require_system(const RunConfig& c, const char* cmd) {
  if (!c.system) throw ValidationError(std::string("config: system: required by ") + cmd);
  return *c.system;
}

json lattice_json(const Lattice& l) {
  return {{"n_points", l.size()}, {"q_min", l.q_min()}, {"q_max", l.q_max()},
          {"hbar", l.hbar()},     {"dq", l.dq()},       {"dp", l.dp()}};
}

WaveFunction make_state(const Lattice& l, const StateBlock& s) {
  return s.kind == "oscillator" ? oscillator_state(l, s.level, s.x0) : gaussian_state(l, s.x0);
}

json state_json(const StateBlock& s) {
  return {{"kind", s.kind}, {"level", s.level}, {"x0", {s.x0.q, s.x0.p}}};
}

void add_grid(Artifacts& files, const RunConfig& c, const std::string& stem,
              const PhaseSpaceFunction& f, json& meta) {
  if (c.output.csv) {
    files[stem + ".csv"] = io::phase_space_csv(f, c.hash);
    meta["files"].push_back(stem + ".csv");
  }
  if (c.output.binary) {
    files[stem + ".psf"] = io::phase_space_binary(f);
    meta["files"].push_back(stem + ".psf");
  }
}

std::vector<double> exp_all(const std::vector<double>& logs) {
  std::vector<double> out;
  for (double y : logs) out.push_back(std::exp(y));
  return out;
}

}  // namespace

Artifacts cmd_wigner(const RunConfig& c) {
  const std::vector<Lattice> lattices = c.lattice.lattices();
  const Lattice& l = single_lattice(lattices, "wigner");
  const PhaseSpaceFunction w = wigner_of(make_state(l, c.state));
  const double w_max = w.values().real().maxCoeff();
  const double w_min = w.values().real().minCoeff();
  const double bound = 1.0 / (std::numbers::pi * l.hbar());
  json meta{{"command", "wigner"},
            {"config_hash", c.hash},
            {"lattice", lattice_json(l)},
            {"state", state_json(c.state)},
            {"normalization", phase_space_integral(w).real()},
            {"max", w_max},
            {"min", w_min},
            {"bound", bound},
            {"bound_ok", std::max(w_max, -w_min) <= bound * (1.0 + 1e-6)},
            // Roundoff-level minima of nonnegative functions do not count.
            {"negative", w_min < -1e-10 * bound},
            {"imag_residue", w.imag_residue()},
            {"files", json::array()}};
  Artifacts files;
  add_grid(files, c, "wigner", w, meta);
  files["wigner_meta.json"] = meta.dump(2) + "\n";
  return files;
}

Artifacts cmd_trajectory(const RunConfig& c) {
  const HamiltonianSpec& spec = require_system(c, "trajectory");
  const ExperimentBlock& e = c.experiment;
  const std::vector<double> times = linspace(0.0, e.t_max, e.n_samples);
  json meta{{"command", "trajectory"},
            {"config_hash", c.hash},
            {"potential", spec.name},
            {"x0", {e.x0.q, e.x0.p}},
            {"t_max", e.t_max},
            {"files", {"trajectory_classical.csv"}}};
  Artifacts files;
  files["trajectory_classical.csv"] = io::trajectory_csv(classical_flow(spec, e.x0, times), c.hash);
  for (const Lattice& l : c.lattice.lattices()) {
    const QuantumDynamics dyn(l, spec, {e.x0});
    const std::string tag = hbar_tag(l.hbar());
    files["trajectory_quantum_" + tag + ".csv"] =
        io::trajectory_csv(quantum_trajectory(dyn, e.x0, times), c.hash);
    meta["files"].push_back("trajectory_quantum_" + tag + ".csv");
    if (e.epsilon) {
      const auto mq = smeared_mean(dyn, weyl_dequantize(dyn.coordinates().q), e.x0, *e.epsilon, times);
      const auto mp = smeared_mean(dyn, weyl_dequantize(dyn.coordinates().p), e.x0, *e.epsilon, times);
      Trajectory tr;
      tr.times = times;
      for (std::size_t k = 0; k < times.size(); ++k) tr.points.push_back({mq[k], mp[k]});
      tr.provenance = Provenance::smeared;
      tr.hbar = l.hbar();
      tr.epsilon = *e.epsilon;
      files["trajectory_smeared_" + tag + ".csv"] = io::trajectory_csv(tr, c.hash);
      meta["files"].push_back("trajectory_smeared_" + tag + ".csv");
    }
  }
  files["trajectory_meta.json"] = meta.dump(2) + "\n";
  return files;
}

Artifacts cmd_lyapunov(const RunConfig& c, bool* usable) {
  const HamiltonianSpec& spec = require_system(c, "lyapunov");
  const ExperimentBlock& e = c.experiment;
  CompareOptions o;
  o.n_samples = e.n_samples;
  o.window = e.fit_window;
  o.clip_to_escape = e.clip_to_escape;
  o.egorov_time = e.egorov_time;
  o.gradient = e.gradient;
  const ComparisonReport r =
      compare_report(spec, make_displacement(e.x0, e.v), c.lattice.lattices(), e.t_max, o);

  Artifacts files;
  files["lyapunov_report.json"] = io::report_json(r, c.hash);
  files["norms_classical.csv"] =
      io::norm_series_csv(r.classical_times, exp_all(r.classical_log_norms), c.hash);
  bool any = false;
  for (const CompareRow& row : r.rows) {
    const std::string tag = hbar_tag(row.hbar);
    if (!row.fd_norms.empty()) {
      files["norms_quantum_fd_" + tag + ".csv"] = io::norm_series_csv(row.times, row.fd_norms, c.hash);
    }
    if (!row.rho0v_norms.empty()) {
      files["norms_quantum_rho0v_" + tag + ".csv"] =
          io::norm_series_csv(row.times, row.rho0v_norms, c.hash);
    }
    any = any || row.quantum_fd || row.quantum_rho0v;
    for (const std::string& err : row.errors) warn("lyapunov: " + tag + ": " + err);
  }
  if (usable) *usable = any;
  return files;
}

Artifacts cmd_tomo(const RunConfig& c) {
  const std::vector<Lattice> lattices = c.lattice.lattices();
  const Lattice& l = single_lattice(lattices, "tomo");
  const ExperimentBlock& e = c.experiment;
  json meta{{"command", "tomo"}, {"config_hash", c.hash}, {"lattice", lattice_json(l)}};
  Artifacts files;
  std::vector<std::string> warnings;
  {
    WarningCapture capture;
    std::optional<PhaseSpaceFunction> w;
    Tomogram tom;
    if (e.tomogram_input) {
      tom = io::parse_tomogram_csv(io::read_file(*e.tomogram_input), l);
      meta["source"] = *e.tomogram_input;
    } else {
      w = wigner_of(make_state(l, c.state));
      tom = radon_transform(*w, e.n_angles);
      meta["source"] = "state";
      meta["state"] = state_json(c.state);
    }
    meta["n_angles"] = tom.n_angles();
    double slice_err = 0.0;
    for (std::size_t i = 0; i < tom.n_angles(); ++i) {
      slice_err = std::max(slice_err, std::abs(tom.slice_integral(i) - 1.0));
    }
    meta["slice_normalization_max_error"] = slice_err;
    meta["tomogram_min"] = tom.values.minCoeff();

    const PhaseSpaceFunction rec = inverse_radon(tom);
    if (w) {
      const double rel = (rec.values() - w->values()).norm() / w->values().norm();
      meta["round_trip_relative_l2"] = rel;
      meta["round_trip_tolerance"] = 1e-3;
      meta["round_trip_ok"] = rel <= 1e-3;
      const std::vector<std::pair<std::string, PhaseSpaceSampler>> observables{
          {"1", [](double, double) { return cplx(1.0); }},
          {"q", [](double q, double) { return cplx(q); }},
          {"p", [](double, double p) { return cplx(p); }},
          {"q^2", [](double q, double) { return cplx(q * q); }},
          {"p^2", [](double, double p) { return cplx(p * p); }}};
      meta["means"] = json::array();
      for (const auto& [name, f] : observables) {
        const PhaseSpaceFunction a = sample_symbol(l, f);
        const double tomo = tomographic_mean(tom, a);
        const double weyl = phase_space_integral(PhaseSpaceFunction(
            l, RowGrid::half, a.values().cwiseProduct(w->values()))).real();
        meta["means"].push_back({{"observable", name},
                                 {"tomographic", tomo},
                                 {"weyl", weyl},
                                 {"abs_error", finite_or_null(std::abs(tomo - weyl))}});
      }
      if (c.output.csv) files["tomogram.csv"] = io::tomogram_csv(tom, c.hash);
    }
    meta["files"] = json::array();
    if (w && c.output.csv) meta["files"].push_back("tomogram.csv");
    add_grid(files, c, "reconstruction", rec, meta);
    // The means reconstruct internally and repeat the reconstruction's warnings.
    for (const std::string& m : capture.messages()) {
      if (std::find(warnings.begin(), warnings.end(), m) == warnings.end()) warnings.push_back(m);
    }
  }
  for (const std::string& m : warnings) warn(m);
  meta["warnings"] = warnings;
  files["tomo_metrics.json"] = meta.dump(2) + "\n";
  return files;
}

std::vector<std::string> write_artifacts(const RunConfig& c, const Artifacts& files) {
  std::vector<std::string> out;
  for (const auto& [name, content] : files) {
    const std::string path = (std::filesystem::path(c.output.directory) / name).string();
    io::write_file_atomic(path, content);
    out.push_back(path);
  }
  return out;
}

}  // namespace moyal::cli
