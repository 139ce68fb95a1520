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

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "moyal/lattice.hpp"
#include "moyal/states.hpp"

namespace moyal {

class QuantumDynamics;
struct HamiltonianSpec;

enum class GrowthClass { exponential, polynomial, bounded };
enum class Route { classical, quantum_fd, quantum_rho0v };

std::string to_string(GrowthClass g);
std::string to_string(Route r);

struct FitWindow {
  double t_lo = 0.0;
  double t_hi = 0.0;
};

/// [0.2, 0.9] * t_max.
FitWindow default_fit_window(double t_max);

struct LyapunovEstimate {
  /// Growth rate: the fitted slope of ln||.|| for exponential and bounded
  /// series, 0 for polynomial growth (its exponential rate vanishes).
  double value = 0.0;
  FitWindow fit_window;
  /// rms residual of the linear fit of ln||.|| against t.
  double residual = 0.0;
  GrowthClass growth_class = GrowthClass::bounded;
  Route route = Route::classical;
  /// Windowed least-squares slope of ln||.|| against t and its standard error.
  double windowed_slope = 0.0;
  double slope_stderr = 0.0;
  /// Exponent and rms residual of the power-law fit ln||.|| = b + alpha ln t
  /// (NaN when the window touches t <= 0).
  double power_exponent = 0.0;
  double power_residual = 0.0;
  std::size_t n_samples = 0;
};

struct EstimatorOptions {
  /// Largest rms residual (in ln units) accepted for an exponential fit.
  double residual_threshold = 0.05;
  /// Slope must exceed this many standard errors to count as growth.
  double significance = 3.0;
  /// Total fitted growth slope*(t_hi - t_lo) below this is "bounded".
  double growth_floor = 0.05;
};

/// Fits ln y over the window and classifies the growth. Requires at least 10
/// samples in the window and y > 0 there.
LyapunovEstimate finite_time_exponent(const std::vector<std::pair<double, double>>& norm_series,
                                      FitWindow window, Route route = Route::classical,
                                      EstimatorOptions options = {});
/// Same estimator on (t, ln y) pairs, for series that would overflow.
LyapunovEstimate finite_time_exponent_log(const std::vector<double>& times,
                                          const std::vector<double>& log_norms,
                                          FitWindow window, Route route = Route::classical,
                                          EstimatorOptions options = {});

struct GradientOptions {
  /// Finite-difference step; 0 selects dq. Adjusted upward so that
  /// (delta/2) v1 is a whole number of half-grid steps.
  double delta_fd = 0.0;
  bool richardson = true;
  /// Diagonal weights of the gradient norm (q-scale, p-scale).
  double q_weight = 1.0;
  double p_weight = 1.0;
};

/// The step actually used for displacement disp on this lattice.
double effective_fd_step(const Lattice& lattice, const PhaseSpaceDisplacement& disp,
                         const GradientOptions& options);

/// Every phase-space point the two gradient routes read symbols at.
std::vector<PhasePoint> gradient_readout(const Lattice& lattice,
                                         const PhaseSpaceDisplacement& disp,
                                         const GradientOptions& options);

/// (v.grad_{x0}) X(x0, t; hbar) by central differences of symbols.
std::vector<PhasePoint> symbol_gradient_fd(const QuantumDynamics& dyn,
                                           const PhaseSpaceDisplacement& disp,
                                           const std::vector<double>& times,
                                           GradientOptions options = {});
PhasePoint symbol_gradient_fd(const QuantumDynamics& dyn, const PhaseSpaceDisplacement& disp,
                              double t, GradientOptions options = {});

/// Tr[X(t) rho0v]: the same gradient as a trace against the singular kernel.
std::vector<PhasePoint> gradient_via_rho0v(const QuantumDynamics& dyn,
                                           const PhaseSpaceDisplacement& disp,
                                           const std::vector<double>& times);
PhasePoint gradient_via_rho0v(const QuantumDynamics& dyn, const PhaseSpaceDisplacement& disp,
                              double t);

struct QuantumLyapunovResult {
  LyapunovEstimate estimate;
  std::vector<double> times;
  std::vector<PhasePoint> gradients;
  double max_usable_time = 0.0;
};

/// Lambda_v from the gradient norm series on linspace(0, t_max, n_samples).
/// Throws EscapeError naming the max usable t if the escape window ends
/// before the fit window does.
QuantumLyapunovResult quantum_lyapunov(const QuantumDynamics& dyn,
                                       const PhaseSpaceDisplacement& disp, double t_max,
                                       std::optional<FitWindow> window, Route route,
                                       std::size_t n_samples = 201,
                                       GradientOptions options = {},
                                       EstimatorOptions estimator = {});

struct CompareOptions {
  std::size_t n_samples = 201;
  std::optional<FitWindow> window;
  /// Shrink the fit window to [0.2, 0.9] * (escape time) when escape comes
  /// before t_max instead of failing the row.
  bool clip_to_escape = false;
  double egorov_time = 1.0;
  GradientOptions gradient;
  EstimatorOptions estimator;
};

struct CompareRow {
  double hbar = 0.0;
  std::optional<LyapunovEstimate> quantum_fd;
  std::optional<LyapunovEstimate> quantum_rho0v;
  double max_usable_time = 0.0;
  std::optional<double> egorov_residual;
  std::vector<std::string> errors;
  std::vector<double> times;
  std::vector<double> fd_norms;
  std::vector<double> rho0v_norms;
};

struct ComparisonReport {
  std::string potential;
  PhasePoint x0;
  PhasePoint v;
  double t_max = 0.0;
  LyapunovEstimate classical;
  std::vector<double> classical_times;
  std::vector<double> classical_log_norms;
  std::vector<CompareRow> rows;
};

/// One row per lattice (each carries its own hbar); failures inside a row are
/// recorded in CompareRow::errors and the sweep continues.
ComparisonReport compare_report(const HamiltonianSpec& spec,
                                const PhaseSpaceDisplacement& disp,
                                const std::vector<Lattice>& lattices, double t_max,
                                CompareOptions options = {});

}  // namespace moyal
