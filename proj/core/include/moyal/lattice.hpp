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

#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

#include <Eigen/Dense>

namespace moyal {

using cplx = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

/// A point x = (q, p) of the two-dimensional phase space.
struct PhasePoint {
  double q = 0.0;
  double p = 0.0;
};

/**
 * Uniform position grid q_j = q_min + j*dq, j = 0..N-1, with dq = L/N, and
 * its discrete Fourier dual p_k = (k - N/2)*dp with dp = 2*pi*hbar/(N*dq).
 *
 * Symbols live on a finer phase-space grid: the 2N-1 pair midpoints
 * (q_a + q_b)/2 in position, and N momenta (j - N/2)*dp/2 covering the inner
 * half [-P/4, P/4) of the lattice momentum band P = N*dp. Sampling the
 * antidiagonal offset q_b - q_a (a multiple of dq) only resolves momenta in
 * that inner band, so the Weyl map is exact there.
 *
 * Fourier convention, used everywhere:
 *   psi~(p) = h^{-1/2} sum_j psi(q_j) exp(-i p q_j / hbar) dq.
 */
class Lattice {
 public:
  std::size_t size() const { return n_; }
  double q_min() const { return q_min_; }
  double q_max() const { return q_max_; }
  double length() const { return q_max_ - q_min_; }
  double dq() const { return dq_; }
  double dp() const { return dp_; }
  double hbar() const { return hbar_; }
  /// Planck's constant h = 2*pi*hbar.
  double h() const;

  double q(std::size_t j) const { return q_min_ + static_cast<double>(j) * dq_; }
  /// Lattice momentum; index N/2 is p = 0.
  double p(std::size_t k) const {
    return (static_cast<double>(k) - static_cast<double>(n_ / 2)) * dp_;
  }

  std::size_t half_size() const { return 2 * n_ - 1; }
  double half_q(std::size_t m) const {
    return q_min_ + static_cast<double>(m) * 0.5 * dq_;
  }
  /// Index m with half_q(m) == q, if q lies on the half-grid.
  std::optional<std::size_t> half_index(double q) const;

  /// Momentum samples of the symbol grid: spacing dp/2, index N/2 is p = 0.
  std::size_t symbol_p_size() const { return n_; }
  double symbol_dp() const { return 0.5 * dp_; }
  double symbol_p(std::size_t j) const {
    return (static_cast<double>(j) - static_cast<double>(n_ / 2)) * 0.5 * dp_;
  }
  /// Half-width of the momentum band resolved by symbols (P/4).
  double symbol_p_limit() const { return 0.25 * static_cast<double>(n_) * dp_; }

  std::vector<double> q_grid() const;
  std::vector<double> p_grid() const;
  std::vector<double> symbol_p_grid() const;

  /// psi on the q grid -> psi~ on the lattice p grid (continuum normalized).
  CVector to_momentum(const CVector& psi) const;
  CVector from_momentum(const CVector& psi_p) const;

  bool operator==(const Lattice& other) const = default;

 private:
  friend Lattice make_lattice(std::size_t, double, double, double);

  std::size_t n_ = 0;
  double q_min_ = 0.0;
  double q_max_ = 0.0;
  double dq_ = 0.0;
  double dp_ = 0.0;
  double hbar_ = 0.0;
};

/// Throws ValidationError unless n_points is a power of two >= 8,
/// q_max > q_min and hbar > 0.
Lattice make_lattice(std::size_t n_points, double q_min, double q_max,
                     double hbar);

/// The 2N-1 midpoints (q' + q'')/2 of grid pairs, ascending.
std::vector<double> half_grid(const Lattice& lattice);

/// Throws ValidationError when the two lattices differ.
void require_same_lattice(const Lattice& a, const Lattice& b, const char* what);

}  // namespace moyal
