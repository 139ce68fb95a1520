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

#include "moyal/lattice.hpp"

namespace moyal {

/// Grid amplitudes psi(q_j) with the measure dq.
class WaveFunction {
 public:
  WaveFunction(Lattice lattice, CVector amplitudes);

  const Lattice& lattice() const { return lattice_; }
  const CVector& amplitudes() const { return amp_; }
  cplx operator[](std::size_t j) const { return amp_[static_cast<Eigen::Index>(j)]; }

  /// sqrt(sum |psi|^2 dq)
  double norm() const;
  /// <this|other> = sum conj(psi) phi dq
  cplx inner(const WaveFunction& other) const;
  WaveFunction normalized() const;
  /// Amplitudes on the lattice momentum grid, continuum normalized.
  CVector momentum_amplitudes() const { return lattice_.to_momentum(amp_); }

 private:
  Lattice lattice_;
  CVector amp_;
};

enum class OperatorKind {
  observable,
  density,
  /// Derivative of a quantizer: pairs with observables but is not a state.
  singular,
};

/**
 * Operator on the lattice stored as its action matrix M, so that
 * (A psi)(q_a) = sum_b M_ab psi(q_b). The continuum kernel is
 * <q_a|A|q_b> = M_ab / dq.
 */
class OperatorMatrix {
 public:
  OperatorMatrix(Lattice lattice, CMatrix matrix,
                 OperatorKind kind = OperatorKind::observable,
                 bool hermitian = false);

  const Lattice& lattice() const { return lattice_; }
  const CMatrix& matrix() const { return m_; }
  std::size_t size() const { return lattice_.size(); }
  cplx kernel(std::size_t a, std::size_t b) const;
  OperatorKind kind() const { return kind_; }
  bool hermitian() const { return hermitian_; }

  OperatorMatrix adjoint() const;
  CVector apply(const CVector& psi) const { return m_ * psi; }
  WaveFunction apply(const WaveFunction& psi) const;

  OperatorMatrix operator*(const OperatorMatrix& other) const;
  OperatorMatrix operator+(const OperatorMatrix& other) const;
  OperatorMatrix operator-(const OperatorMatrix& other) const;
  OperatorMatrix operator*(cplx s) const;

 private:
  Lattice lattice_;
  CMatrix m_;
  OperatorKind kind_;
  bool hermitian_;
};

/// Relative Hermiticity defect ||M - M^+|| / max(1, ||M||) (max norm).
double hermiticity_defect(const CMatrix& m);

cplx trace_of(const OperatorMatrix& op);
/// <psi|A|psi> for a positive-kind operator; singular kernels are rejected.
cplx expectation(const OperatorMatrix& op, const WaveFunction& psi);

OperatorMatrix identity_operator(const Lattice& lattice);
/// Multiplication by q.
OperatorMatrix position_operator(const Lattice& lattice);
/// Spectral momentum F^+ diag(p_k) F on the full lattice band.
OperatorMatrix momentum_operator(const Lattice& lattice);
/// Spectral f(p) = F^+ diag(f(p_k)) F for a real function sampled on p_k.
OperatorMatrix momentum_function(const Lattice& lattice,
                                 const Eigen::VectorXd& values_on_p_grid);

/// Phase-space base point x0 with a unit direction v.
struct PhaseSpaceDisplacement {
  PhasePoint x0;
  PhasePoint v;
};

/// Throws ValidationError unless ||v|| = 1 within 1e-12.
PhaseSpaceDisplacement make_displacement(PhasePoint x0, PhasePoint v);

/// (pi hbar)^{-1/4} exp(-(q-q0)^2/(2 hbar) + i p0 (q-q0)/hbar).
WaveFunction gaussian_state(const Lattice& lattice, PhasePoint x0);

/// n-th eigenfunction of p^2/2 + (q-q0)^2/2 boosted by p0; same width as
/// gaussian_state, which is the n = 0 case.
WaveFunction oscillator_state(const Lattice& lattice, int n, PhasePoint x0);

/// Phase-space translation by y = (a, b): psi(q) -> e^{i b (q - a/2)/hbar}
/// psi(q - a), with the position shift done spectrally (exact for states
/// band-limited inside the lattice momentum range, periodic in q).
WaveFunction translate_state(const WaveFunction& psi, PhasePoint shift);

/// Density |psi><psi| (kernel psi(q') conj(psi(q''))).
OperatorMatrix density_from_pure(const WaveFunction& psi);

/**
 * Kernel e^{i p0 (q'-q'')/hbar} (v1 d/dq0 + i v2 (q'-q'')/hbar)
 * delta(q0 - (q'+q'')/2), the directional derivative 2 (v.grad) of the
 * quantizer at x0. The q0-derivative is a central difference over the
 * neighbouring half-grid rows. q0 must lie on the half-grid with both
 * neighbours present.
 */
OperatorMatrix singular_density_rho0v(const Lattice& lattice,
                                      const PhaseSpaceDisplacement& disp);

}  // namespace moyal
