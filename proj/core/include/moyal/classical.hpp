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

#pragma once

#include <functional>
#include <vector>

#include "moyal/hamiltonian.hpp"
#include "moyal/lyapunov.hpp"
#include "moyal/trajectory.hpp"

namespace moyal {

struct IntegratorOptions {
  double abs_tol = 1e-13;
  double rel_tol = 1e-13;
  /// Relative energy drift (against the energy scale p^2/2 + |V|) that is
  /// treated as an integration failure.
  double max_energy_drift = 1e-9;
};

/// Hamilton's equations q' = p, p' = -V'(q) with an adaptive 7/8 order
/// Runge-Kutta-Fehlberg integrator.
Trajectory classical_flow(const HamiltonianSpec& spec, PhasePoint x0,
                          const std::vector<double>& times, IntegratorOptions options = {});

/// Largest relative energy drift along a classical trajectory.
double energy_drift(const HamiltonianSpec& spec, const Trajectory& tr);

struct TangentState {
  double t = 0.0;
  PhasePoint x;
  /// (v.grad_{x0}) x(t, x0); may overflow to inf for very long runs.
  PhasePoint delta;
  /// ln ||delta||, exact even after renormalization.
  double log_norm = 0.0;
  /// det of the accumulated 2x2 Jacobian (1 for a symplectic flow); NaN once
  /// the Jacobian has been renormalized.
  double jacobian_det = 1.0;
};

/// Flow and variational equations integrated jointly; the Jacobian is
/// rescaled whenever its norm exceeds 1e100 and the scale kept as a log.
std::vector<TangentState> tangent_flow(const HamiltonianSpec& spec, PhasePoint x0,
                                       PhasePoint v, const std::vector<double>& times,
                                       IntegratorOptions options = {});

/// lambda_v from the slope of ln ||delta(t)|| over the fit window.
LyapunovEstimate classical_lyapunov(const HamiltonianSpec& spec, PhasePoint x0, PhasePoint v,
                                    double t_max, std::optional<FitWindow> window = {},
                                    std::size_t n_samples = 201);

using PhaseSpaceObservable = std::function<double(PhasePoint)>;

/// integral W_eps(y; x0) A(x(t, y)) dy by tensor Gauss-Hermite quadrature:
/// the classical statistical mean (hbar -> 0 with eps fixed).
std::vector<double> classical_smeared_mean(const HamiltonianSpec& spec,
                                           const PhaseSpaceObservable& a, PhasePoint x0,
                                           double epsilon, const std::vector<double>& times,
                                           int order = 20);

/// Gauss-Hermite nodes and weights for the weight exp(-u^2).
void gauss_hermite(int order, std::vector<double>& nodes, std::vector<double>& weights);

}  // namespace moyal
