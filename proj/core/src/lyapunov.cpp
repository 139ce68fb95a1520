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

#include "moyal/lyapunov.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "moyal/classical.hpp"
#include "moyal/diagnostics.hpp"
#include "moyal/dynamics.hpp"

namespace moyal {

namespace {

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double rms = 0.0;
  double stderr_slope = 0.0;
};

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  LineFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (f.intercept + f.slope * x[i]);
    ss += r * r;
  }
  f.rms = std::sqrt(ss / n);
  f.stderr_slope = x.size() > 2 ? std::sqrt(ss / (n - 2.0) / sxx) : 0.0;
  return f;
}

double weighted_norm(PhasePoint g, const GradientOptions& o) {
  return std::hypot(o.q_weight * g.q, o.p_weight * g.p);
}

}  // namespace

std::string to_string(GrowthClass g) {
  switch (g) {
    case GrowthClass::exponential: return "exponential";
    case GrowthClass::polynomial: return "polynomial";
    case GrowthClass::bounded: return "bounded";
  }
  return "unknown";
}

std::string to_string(Route r) {
  switch (r) {
    case Route::classical: return "classical";
    case Route::quantum_fd: return "quantum_fd";
    case Route::quantum_rho0v: return "quantum_rho0v";
  }
  return "unknown";
}

FitWindow default_fit_window(double t_max) { return {0.2 * t_max, 0.9 * t_max}; }

LyapunovEstimate finite_time_exponent(const std::vector<std::pair<double, double>>& norm_series,
                                      FitWindow window, Route route, EstimatorOptions options) {
  std::vector<double> t, l;
  for (const auto& [ti, yi] : norm_series) {
    t.push_back(ti);
    const bool inside = ti >= window.t_lo && ti <= window.t_hi;
    if (inside && !(yi > 0.0)) {
      throw ValidationError("finite_time_exponent: norm series must be positive in the window");
    }
    l.push_back(yi > 0.0 ? std::log(yi) : -std::numeric_limits<double>::infinity());
  }
  return finite_time_exponent_log(t, l, window, route, options);
}

LyapunovEstimate finite_time_exponent_log(const std::vector<double>& times,
                                          const std::vector<double>& log_norms,
                                          FitWindow window, Route route,
                                          EstimatorOptions options) {
  if (times.size() != log_norms.size()) {
    throw ValidationError("finite_time_exponent: times and values differ in length");
  }
  if (!(window.t_lo < window.t_hi)) {
    throw ValidationError("finite_time_exponent: fit window needs t_lo < t_hi");
  }
  const double tol = 1e-12 * std::max(1.0, std::abs(window.t_hi));
  std::vector<double> t, y, lt;
  bool positive_times = true;
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (times[i] < window.t_lo - tol || times[i] > window.t_hi + tol) continue;
    if (!std::isfinite(log_norms[i])) {
      throw ValidationError("finite_time_exponent: norm series must be positive in the window");
    }
    t.push_back(times[i]);
    y.push_back(log_norms[i]);
    if (times[i] > 0.0) {
      lt.push_back(std::log(times[i]));
    } else {
      positive_times = false;
    }
  }
  if (t.size() < 10) {
    std::ostringstream os;
    os << "finite_time_exponent: fit window [" << window.t_lo << ", " << window.t_hi
       << "] holds " << t.size() << " samples, need at least 10";
    throw ValidationError(os.str());
  }
  const LineFit lin = fit_line(t, y);
  LyapunovEstimate e;
  e.fit_window = window;
  e.route = route;
  e.n_samples = t.size();
  e.windowed_slope = lin.slope;
  e.slope_stderr = lin.stderr_slope;
  e.residual = lin.rms;
  e.power_exponent = std::numeric_limits<double>::quiet_NaN();
  e.power_residual = std::numeric_limits<double>::quiet_NaN();
  if (positive_times) {
    const LineFit pw = fit_line(lt, y);
    e.power_exponent = pw.slope;
    e.power_residual = pw.rms;
  }

  const double span = window.t_hi - window.t_lo;
  const bool growing = lin.slope > options.significance * lin.stderr_slope &&
                       lin.slope * span >= options.growth_floor;
  if (!growing) {
    e.growth_class = GrowthClass::bounded;
    e.value = lin.slope;
  } else if (lin.rms <= options.residual_threshold &&
             !(positive_times && e.power_residual < lin.rms)) {
    e.growth_class = GrowthClass::exponential;
    e.value = lin.slope;
  } else {
    e.growth_class = GrowthClass::polynomial;
    e.value = 0.0;
  }
  return e;
}

double effective_fd_step(const Lattice& lattice, const PhaseSpaceDisplacement& disp,
                         const GradientOptions& options) {
  if (options.delta_fd < 0.0) throw ValidationError("delta_fd must be >= 0");
  const double delta = options.delta_fd > 0.0 ? options.delta_fd : lattice.dq();
  const double v1 = std::abs(disp.v.q);
  if (v1 < 1e-14) return delta;
  // (delta/2) v1 must be a whole number k of half-grid steps dq/2.
  const double k = std::max(1.0, std::round(delta * v1 / lattice.dq()));
  return k * lattice.dq() / v1;
}

namespace {

PhasePoint shifted(PhasePoint x, PhasePoint v, double s) {
  return {x.q + s * v.q, x.p + s * v.p};
}

}  // namespace

std::vector<PhasePoint> gradient_readout(const Lattice& lattice,
                                         const PhaseSpaceDisplacement& disp,
                                         const GradientOptions& options) {
  const double d = effective_fd_step(lattice, disp, options);
  return {disp.x0, shifted(disp.x0, disp.v, 0.5 * d), shifted(disp.x0, disp.v, -0.5 * d),
          shifted(disp.x0, disp.v, d), shifted(disp.x0, disp.v, -d)};
}

std::vector<PhasePoint> symbol_gradient_fd(const QuantumDynamics& dyn,
                                           const PhaseSpaceDisplacement& disp,
                                           const std::vector<double>& times,
                                           GradientOptions options) {
  const PhaseSpaceDisplacement d = make_displacement(disp.x0, disp.v);
  const double h = effective_fd_step(dyn.lattice(), d, options);
  auto central = [&](double step) {
    const auto plus = dyn.symbols_at(shifted(d.x0, d.v, 0.5 * step), times);
    const auto minus = dyn.symbols_at(shifted(d.x0, d.v, -0.5 * step), times);
    std::vector<PhasePoint> g(times.size());
    for (std::size_t i = 0; i < times.size(); ++i) {
      g[i] = {(plus[i].q - minus[i].q) / step, (plus[i].p - minus[i].p) / step};
    }
    return g;
  };
  std::vector<PhasePoint> g1 = central(h);
  if (!options.richardson) return g1;
  const std::vector<PhasePoint> g2 = central(2.0 * h);
  for (std::size_t i = 0; i < times.size(); ++i) {
    g1[i] = {(4.0 * g1[i].q - g2[i].q) / 3.0, (4.0 * g1[i].p - g2[i].p) / 3.0};
  }
  return g1;
}

PhasePoint symbol_gradient_fd(const QuantumDynamics& dyn, const PhaseSpaceDisplacement& disp,
                              double t, GradientOptions options) {
  return symbol_gradient_fd(dyn, disp, std::vector<double>{t}, options).front();
}

std::vector<PhasePoint> gradient_via_rho0v(const QuantumDynamics& dyn,
                                           const PhaseSpaceDisplacement& disp,
                                           const std::vector<double>& times) {
  const auto pr = dyn.pair_coordinates(singular_density_rho0v(dyn.lattice(), disp));
  std::vector<PhasePoint> out;
  out.reserve(times.size());
  for (double t : times) out.push_back(pr.at(dyn.propagator().phases(t)));
  return out;
}

PhasePoint gradient_via_rho0v(const QuantumDynamics& dyn, const PhaseSpaceDisplacement& disp,
                              double t) {
  return gradient_via_rho0v(dyn, disp, std::vector<double>{t}).front();
}

QuantumLyapunovResult quantum_lyapunov(const QuantumDynamics& dyn,
                                       const PhaseSpaceDisplacement& disp, double t_max,
                                       std::optional<FitWindow> window, Route route,
                                       std::size_t n_samples, GradientOptions options,
                                       EstimatorOptions estimator) {
  if (route == Route::classical) {
    throw ValidationError("quantum_lyapunov: route must be quantum_fd or quantum_rho0v");
  }
  if (!(t_max > 0.0)) throw ValidationError("quantum_lyapunov: t_max must be positive");
  const PhaseSpaceDisplacement d = make_displacement(disp.x0, disp.v);
  const FitWindow w = window ? *window : default_fit_window(t_max);
  QuantumLyapunovResult res;
  res.times = linspace(0.0, t_max, n_samples);
  const std::vector<PhasePoint> readout =
      route == Route::quantum_fd ? gradient_readout(dyn.lattice(), d, options)
                                 : std::vector<PhasePoint>{d.x0};
  const EscapeScan scan = dyn.escape_scan(res.times, readout);
  res.max_usable_time = scan.escaped ? scan.max_usable_time : t_max;
  if (scan.escaped && scan.max_usable_time < w.t_hi) {
    std::ostringstream os;
    os << "quantum_lyapunov: escape window ends before the fit window (t_hi = " << w.t_hi
       << "); max usable t = " << scan.max_usable_time;
    throw EscapeError(os.str(), scan.max_usable_time);
  }
  res.gradients = route == Route::quantum_fd ? symbol_gradient_fd(dyn, d, res.times, options)
                                             : gradient_via_rho0v(dyn, d, res.times);
  std::vector<std::pair<double, double>> series;
  for (std::size_t i = 0; i < res.times.size(); ++i) {
    series.emplace_back(res.times[i], weighted_norm(res.gradients[i], options));
  }
  res.estimate = finite_time_exponent(series, w, route, estimator);
  return res;
}

ComparisonReport compare_report(const HamiltonianSpec& spec,
                                const PhaseSpaceDisplacement& disp,
                                const std::vector<Lattice>& lattices, double t_max,
                                CompareOptions options) {
  if (lattices.empty()) throw ValidationError("compare_report: empty hbar list");
  if (!(t_max > 0.0)) throw ValidationError("compare_report: t_max must be positive");
  const PhaseSpaceDisplacement d = make_displacement(disp.x0, disp.v);
  ComparisonReport rep;
  rep.potential = spec.name;
  rep.x0 = d.x0;
  rep.v = d.v;
  rep.t_max = t_max;
  rep.classical_times = linspace(0.0, t_max, options.n_samples);
  const FitWindow full = options.window ? *options.window : default_fit_window(t_max);
  {
    const auto states = tangent_flow(spec, d.x0, d.v, rep.classical_times);
    for (const auto& s : states) rep.classical_log_norms.push_back(s.log_norm);
    rep.classical = finite_time_exponent_log(rep.classical_times, rep.classical_log_norms, full,
                                             Route::classical, options.estimator);
  }
  for (const Lattice& l : lattices) {
    CompareRow row;
    row.hbar = l.hbar();
    try {
      std::vector<PhasePoint> readout = gradient_readout(l, d, options.gradient);
      const QuantumDynamics dyn(l, spec, readout);
      row.times = linspace(0.0, t_max, options.n_samples);
      const EscapeScan scan = dyn.escape_scan(row.times, readout);
      row.max_usable_time = scan.escaped ? scan.max_usable_time : t_max;
      FitWindow w = full;
      if (scan.escaped && scan.max_usable_time < w.t_hi && options.clip_to_escape &&
          scan.max_usable_time > 0.0) {
        w = default_fit_window(scan.max_usable_time);
      }
      const auto fd = symbol_gradient_fd(dyn, d, row.times, options.gradient);
      const auto tr = gradient_via_rho0v(dyn, d, row.times);
      std::vector<std::pair<double, double>> s_fd, s_tr;
      for (std::size_t i = 0; i < row.times.size(); ++i) {
        row.fd_norms.push_back(weighted_norm(fd[i], options.gradient));
        row.rho0v_norms.push_back(weighted_norm(tr[i], options.gradient));
        s_fd.emplace_back(row.times[i], row.fd_norms.back());
        s_tr.emplace_back(row.times[i], row.rho0v_norms.back());
      }
      if (scan.escaped && scan.max_usable_time < w.t_hi) {
        std::ostringstream os;
        os << "escape window ends before the fit window; max usable t = "
           << scan.max_usable_time;
        row.errors.push_back(os.str());
      } else {
        try {
          row.quantum_fd = finite_time_exponent(s_fd, w, Route::quantum_fd, options.estimator);
          row.quantum_rho0v =
              finite_time_exponent(s_tr, w, Route::quantum_rho0v, options.estimator);
        } catch (const Error& e) {
          row.errors.push_back(e.what());
        }
      }
      if (options.egorov_time <= row.max_usable_time) {
        const Trajectory cl = classical_flow(spec, d.x0, {0.0, options.egorov_time});
        const auto qx = dyn.symbols_at(d.x0, {options.egorov_time}).front();
        row.egorov_residual =
            std::hypot(qx.q - cl.points.back().q, qx.p - cl.points.back().p);
      } else {
        row.errors.push_back("egorov time lies beyond the escape window");
      }
    } catch (const Error& e) {
      row.errors.push_back(e.what());
    }
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

}  // namespace moyal
