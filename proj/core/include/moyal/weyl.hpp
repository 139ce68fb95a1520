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
#include <functional>

#include "moyal/lattice.hpp"
#include "moyal/states.hpp"

namespace moyal {

/// Which position rows a phase-space sample set uses.
enum class RowGrid {
  /// 2N-1 pair midpoints, spacing dq/2 (native symbol domain).
  half,
  /// The N lattice points, spacing dq (every other half-grid row).
  main,
};

/**
 * Samples A(q_i, p_j) of a phase-space function. Columns are always the
 * symbol momenta lattice.symbol_p(j); rows follow RowGrid.
 */
class PhaseSpaceFunction {
 public:
  PhaseSpaceFunction(Lattice lattice, RowGrid rows, CMatrix values,
                     bool is_wigner = false);

  const Lattice& lattice() const { return lattice_; }
  RowGrid rows() const { return rows_; }
  const CMatrix& values() const { return v_; }
  CMatrix& values() { return v_; }
  std::size_t n_q() const { return static_cast<std::size_t>(v_.rows()); }
  std::size_t n_p() const { return static_cast<std::size_t>(v_.cols()); }
  double q(std::size_t i) const;
  double p(std::size_t j) const { return lattice_.symbol_p(j); }
  double dq() const;
  double dp() const { return lattice_.symbol_dp(); }
  bool is_wigner() const { return is_wigner_; }
  cplx operator()(std::size_t i, std::size_t j) const {
    return v_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }
  /// Largest |Im A|.
  double imag_residue() const { return v_.imag().cwiseAbs().maxCoeff(); }

 private:
  Lattice lattice_;
  RowGrid rows_;
  CMatrix v_;
  bool is_wigner_;
};

using PhaseSpaceSampler = std::function<cplx(double q, double p)>;

/// Samples f on the half-grid x symbol-momentum grid.
PhaseSpaceFunction sample_symbol(const Lattice& lattice, const PhaseSpaceSampler& f,
                                 RowGrid rows = RowGrid::half);

/// Band-limited Fourier interpolation of main-grid rows onto the half-grid.
PhaseSpaceFunction to_half_grid(const PhaseSpaceFunction& a);
/// The even half-grid rows (the lattice points themselves).
PhaseSpaceFunction to_main_grid(const PhaseSpaceFunction& a);

/// Weyl symbol A(q,p) = 2 sum_s e^{2ips/hbar} <q-s|A|q+s> ds on the half-grid.
PhaseSpaceFunction weyl_dequantize(const OperatorMatrix& op);
/// Exact left inverse of weyl_dequantize. Main-grid input is first
/// interpolated onto the half-grid.
OperatorMatrix weyl_quantize(const PhaseSpaceFunction& a);

/// W = h^{-1} * symbol(rho). Singular kernels are rejected.
PhaseSpaceFunction wigner_transform(const OperatorMatrix& rho);
PhaseSpaceFunction wigner_of(const WaveFunction& psi);

/// Delta(x) with kernel (1/2) e^{ip(q'-q'')/hbar} delta(q - (q'+q'')/2).
OperatorMatrix quantizer_matrix(const Lattice& lattice, PhasePoint x);

/// dequantize(quantize(A) quantize(B)).
PhaseSpaceFunction star_product(const PhaseSpaceFunction& a,
                                const PhaseSpaceFunction& b);

/// h^{-1} integral A dx over the lattice points (exactly Tr of quantize(A)).
cplx trace_via_symbol(const PhaseSpaceFunction& a);
/// h^{-1} integral A B dx over all half-grid rows (exactly Tr of the product
/// of the quantized operators). Both inputs must be on the half-grid.
cplx trace_of_product_via_symbols(const PhaseSpaceFunction& a,
                                  const PhaseSpaceFunction& b);
/// Phase-space integral of A, weights dq * dp/2 over lattice rows.
cplx phase_space_integral(const PhaseSpaceFunction& a);
/// Integral of A B over the half-grid, weights dq/2 * dp/2.
cplx phase_space_inner(const PhaseSpaceFunction& a, const PhaseSpaceFunction& b);

struct RoyerWeights {
  double plus_weight = 0.0;
  double minus_weight = 0.0;
};

/// ||P+ psi||^2 and ||P- psi||^2 for the projectors (I +- Delta(x))/2 onto
/// the +1 and -1 eigenspaces of the reflection Delta(x).
RoyerWeights royer_expansion(const WaveFunction& psi, PhasePoint x);

/// Position marginal sum_p W dp on lattice rows; momentum marginal sum_q W dq
/// on the symbol momenta.
Eigen::VectorXd position_marginal(const PhaseSpaceFunction& w);
Eigen::VectorXd momentum_marginal(const PhaseSpaceFunction& w);

}  // namespace moyal
