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

#include "moyal/classical.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include <boost/numeric/odeint.hpp>

#include "moyal/diagnostics.hpp"

namespace moyal {

namespace odeint = boost::numeric::odeint;

namespace {

using FlowState = std::array<double, 2>;
// q, p, then the Jacobian d(q,p)/d(q0,p0) row-major.
using TangentStateVec = std::array<double, 6>;

constexpr double kRenormalizeAbove = 1e100;

template <class State, class System>
void advance(System&& sys, State& x, double t0, double t1, const IntegratorOptions& opt) {
  if (t1 == t0) return;
  auto stepper = odeint::make_controlled(opt.abs_tol, opt.rel_tol,
                                         odeint::runge_kutta_fehlberg78<State>());
  const double dt = 0.01 * (t1 - t0);
  try {
    odeint::integrate_adaptive(stepper, sys, x, t0, t1, dt);
  } catch (const std::exception& e) {
    throw NumericalError(std::string("classical integration failed: ") + e.what());
  }
  for (double v : x) {
    if (!std::isfinite(v)) throw NumericalError("classical integration produced non-finite values");
  }
}

double energy_scale(const HamiltonianSpec& spec, PhasePoint x) {
  return 0.5 * x.p * x.p + std::abs(spec.potential(x.q));
}

}  // namespace

Trajectory classical_flow(const HamiltonianSpec& spec, PhasePoint x0,
                          const std::vector<double>& times, IntegratorOptions options) {
  require_increasing(times, "classical_flow");
  auto rhs = [&spec](const FlowState& x, FlowState& dx, double) {
    dx[0] = x[1];
    dx[1] = spec.force(x[0]);
  };
  Trajectory tr;
  tr.provenance = Provenance::classical;
  FlowState x{x0.q, x0.p};
  double t = 0.0;
  // Integrate backwards first if the grid starts before zero.
  if (times.front() < 0.0) {
    advance(rhs, x, 0.0, times.front(), options);
    t = times.front();
  }
  for (double ti : times) {
    advance(rhs, x, t, ti, options);
    t = ti;
    tr.times.push_back(ti);
    tr.points.push_back({x[0], x[1]});
  }
  const double drift = energy_drift(spec, tr);
  const double e0 = spec.energy(x0);
  const double scale = std::max(energy_scale(spec, x0), 1e-300);
  if (drift > options.max_energy_drift) {
    std::ostringstream os;
    os << "classical_flow: energy drift " << drift << " exceeds "
       << options.max_energy_drift << " (E0 = " << e0 << ", scale " << scale << ")";
    throw NumericalError(os.str());
  }
  return tr;
}

double energy_drift(const HamiltonianSpec& spec, const Trajectory& tr) {
  if (tr.points.empty()) return 0.0;
  const double e0 = spec.energy(tr.points.front());
  double worst = 0.0;
  for (const auto& x : tr.points) {
    const double scale =
        std::max({energy_scale(spec, x), energy_scale(spec, tr.points.front()), 1e-300});
    worst = std::max(worst, std::abs(spec.energy(x) - e0) / scale);
  }
  return worst;
}

std::vector<TangentState> tangent_flow(const HamiltonianSpec& spec, PhasePoint x0,
                                       PhasePoint v, const std::vector<double>& times,
                                       IntegratorOptions options) {
  require_increasing(times, "tangent_flow");
  if (std::abs(std::hypot(v.q, v.p) - 1.0) > 1e-12) {
    throw ValidationError("tangent_flow: v must have unit norm");
  }
  if (times.front() < 0.0) throw ValidationError("tangent_flow: times must be >= 0");
  auto rhs = [&spec](const TangentStateVec& x, TangentStateVec& dx, double) {
    const double c = spec.curvature(x[0]);
    dx[0] = x[1];
    dx[1] = spec.force(x[0]);
    // d/dt J = [[0, 1], [-V'', 0]] J
    dx[2] = x[4];
    dx[3] = x[5];
    dx[4] = -c * x[2];
    dx[5] = -c * x[3];
  };
  TangentStateVec x{x0.q, x0.p, 1.0, 0.0, 0.0, 1.0};
  double log_scale = 0.0;
  bool rescaled = false;
  double t = 0.0;
  std::vector<TangentState> out;
  for (double ti : times) {
    // Chunks of at most one time unit keep the Jacobian from overflowing
    // between renormalization checks.
    while (t < ti) {
      const double t_next = std::min(ti, t + 1.0);
      advance(rhs, x, t, t_next, options);
      t = t_next;
      const double jn = std::max({std::abs(x[2]), std::abs(x[3]), std::abs(x[4]), std::abs(x[5])});
      if (jn > kRenormalizeAbove) {
        for (int k = 2; k < 6; ++k) x[static_cast<std::size_t>(k)] /= jn;
        log_scale += std::log(jn);
        rescaled = true;
      }
    }
    TangentState s;
    s.t = ti;
    s.x = {x[0], x[1]};
    const double dq = x[2] * v.q + x[3] * v.p;
    const double dp = x[4] * v.q + x[5] * v.p;
    const double scale = std::exp(log_scale);
    s.delta = {dq * scale, dp * scale};
    s.log_norm = std::log(std::hypot(dq, dp)) + log_scale;
    s.jacobian_det = rescaled ? std::numeric_limits<double>::quiet_NaN()
                              : x[2] * x[5] - x[3] * x[4];
    out.push_back(s);
  }
  return out;
}

LyapunovEstimate classical_lyapunov(const HamiltonianSpec& spec, PhasePoint x0, PhasePoint v,
                                    double t_max, std::optional<FitWindow> window,
                                    std::size_t n_samples) {
  if (!(t_max > 0.0)) throw ValidationError("classical_lyapunov: t_max must be positive");
  const std::vector<double> times = linspace(0.0, t_max, n_samples);
  const auto states = tangent_flow(spec, x0, v, times);
  std::vector<double> logs;
  for (const auto& s : states) logs.push_back(s.log_norm);
  LyapunovEstimate est = finite_time_exponent_log(
      times, logs, window ? *window : default_fit_window(t_max), Route::classical);
  if (est.growth_class != GrowthClass::exponential && est.growth_class != GrowthClass::bounded) {
    warn("classical_lyapunov: growth over the fit window is not exponential (" +
         to_string(est.growth_class) + ")");
  }
  return est;
}

void gauss_hermite(int order, std::vector<double>& nodes, std::vector<double>& weights) {
  if (order < 1) throw ValidationError("gauss_hermite: order must be >= 1");
  // Golub-Welsch on the symmetric Jacobi matrix of the Hermite polynomials.
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(order, order);
  for (int k = 1; k < order; ++k) j(k, k - 1) = j(k - 1, k) = std::sqrt(0.5 * k);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(j);
  nodes.resize(static_cast<std::size_t>(order));
  weights.resize(static_cast<std::size_t>(order));
  for (int k = 0; k < order; ++k) {
    nodes[static_cast<std::size_t>(k)] = es.eigenvalues()[k];
    const double v0 = es.eigenvectors()(0, k);
    weights[static_cast<std::size_t>(k)] = std::sqrt(std::numbers::pi) * v0 * v0;
  }
}

std::vector<double> classical_smeared_mean(const HamiltonianSpec& spec,
                                           const PhaseSpaceObservable& a, PhasePoint x0,
                                           double epsilon, const std::vector<double>& times,
                                           int order) {
  if (!(epsilon >= 0.0)) throw ValidationError("classical_smeared_mean: epsilon must be >= 0");
  std::vector<double> out(times.size(), 0.0);
  if (epsilon == 0.0) {
    const Trajectory tr = classical_flow(spec, x0, times);
    for (std::size_t i = 0; i < times.size(); ++i) out[i] = a(tr.points[i]);
    return out;
  }
  std::vector<double> u, w;
  gauss_hermite(order, u, w);
  const double s = std::sqrt(epsilon);
  for (std::size_t i = 0; i < u.size(); ++i) {
    for (std::size_t k = 0; k < u.size(); ++k) {
      const Trajectory tr = classical_flow(spec, {x0.q + s * u[i], x0.p + s * u[k]}, times);
      const double wk = w[i] * w[k] / std::numbers::pi;
      for (std::size_t n = 0; n < times.size(); ++n) out[n] += wk * a(tr.points[n]);
    }
  }
  return out;
}

}  // namespace moyal
