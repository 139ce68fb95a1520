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

#include <cstddef>
#include <vector>

#include "moyal/lattice.hpp"
#include "moyal/weyl.hpp"

namespace moyal {

/**
 * Line-integral projections R(Q, theta) = integral W(q, p) delta(Q - q cos
 * theta - p sin theta) dq dp on a uniform Q grid. Row i of values holds the
 * slice at thetas[i].
 */
struct Tomogram {
  Lattice lattice;
  std::vector<double> thetas;
  double q_start = 0.0;
  double q_step = 0.0;
  Eigen::MatrixXd values;

  std::size_t n_angles() const { return thetas.size(); }
  std::size_t n_q() const { return static_cast<std::size_t>(values.cols()); }
  double q(std::size_t m) const { return q_start + static_cast<double>(m) * q_step; }
  /// sum_m R(Q_m, theta_i) dQ.
  double slice_integral(std::size_t i) const;
  /// Throws ValidationError on shape mismatch or angles outside [0, pi).
  void validate() const;
};

/// Half-width of the default Q grid: the largest |Q| any point of the
/// lattice's phase-space box projects to.
double tomogram_q_extent(const Lattice& lattice);

/// theta_i = pi i / n_angles.
std::vector<double> uniform_angles(std::size_t n_angles);

/// Fourier-slice projections on the default grid: n_q points covering
/// [-extent, extent). n_q = 0 selects the lattice size.
Tomogram radon_transform(const PhaseSpaceFunction& w, std::size_t n_angles,
                         std::size_t n_q = 0);

/// Projections at the given angles on the uniform grid Q_m = q_start + m
/// q_step, m < n_q. The grid period n_q q_step must exceed the support of
/// every projection.
Tomogram radon_transform(const PhaseSpaceFunction& w, const std::vector<double>& thetas,
                         double q_start, double q_step, std::size_t n_q);

struct InverseRadonOptions {
  RowGrid rows = RowGrid::half;
  /// Filtered projections are tabulated at q_step / oversample before the
  /// linear interpolation of the back-projection.
  std::size_t oversample = 32;
};

/**
 * Filtered back-projection W(x) = integral_0^pi F_theta(q cos theta + p sin
 * theta) dtheta with F = (2 pi)^-2 integral |k| R^(k) e^{ikQ} dk. The ramp
 * integral is exact for projections band-limited to |k| < pi / q_step.
 * Warns below 64 angles.
 */
PhaseSpaceFunction inverse_radon(const Tomogram& tom, InverseRadonOptions options = {});

/**
 * <A> = integral dtheta integral |k| dk A~(k n_theta) T_theta(k) with
 * A~(kappa) = (2 pi)^-2 integral A e^{-i kappa x} dx and T_theta(k) =
 * integral R e^{ikQ} dQ. With the k integral done exactly this equals the
 * phase-space integral of A against the filtered back-projection, which is
 * how it is evaluated. A is sampled on the tomogram's lattice.
 */
double tomographic_mean(const Tomogram& tom, const PhaseSpaceFunction& a,
                        InverseRadonOptions options = {});

/// Ramp kernel (2 pi)^-2 integral_{-K}^{K} |k| e^{iks} dk.
double ramp_kernel(double s, double band_limit);

}  // namespace moyal
