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

// Independent reference values for the tests: closed forms and brute-force
// constructions that share no code path with the library transforms.

#include <complex>
#include <functional>
#include <vector>

#include "moyal/lattice.hpp"
#include "moyal/states.hpp"

namespace moyal::oracle {

/// n-th oscillator eigenfunction of width sqrt(hbar) centred at x0 with
/// momentum p0, from std::hermite.
cplx hermite_function(int n, double q, PhasePoint x0, double hbar);

WaveFunction sampled_state(const Lattice& lattice, const std::function<cplx(double)>& f);

/// Wigner function of oscillator state n displaced to x0:
/// (-1)^n / (pi hbar) exp(-r^2/hbar) L_n(2 r^2 / hbar).
double oscillator_wigner(int n, double q, double p, PhasePoint x0, double hbar);

/// Momentum amplitude (2 pi hbar)^{-1/2} sum_a psi_a e^{-i p q_a / hbar} dq
/// at an arbitrary p.
cplx momentum_amplitude(const WaveFunction& psi, double p);

/// exp(i (beta q - alpha p) / hbar) psi, built as the spectral translation
/// by alpha followed by a phase.
CVector displace(const Lattice& lattice, const CVector& psi, double alpha, double beta);

/// T(y) = exp(-2i J y . x / hbar) = displacement by (-2 y_q, -2 y_p).
CVector translate_t(const Lattice& lattice, const CVector& psi, PhasePoint y);

/// <phi|Delta(x)|psi> from integral e^{2i x.Jy/hbar} <phi|T(y)|psi> dy / (pi
/// hbar), trapezoid over y in [-extent, extent]^2 with n_y points per axis.
cplx quantizer_from_translations(const Lattice& lattice, const CVector& phi, const CVector& psi,
                                 PhasePoint x, double extent, int n_y);

/// Central finite difference of a scalar function.
double central_difference(const std::function<double(double)>& f, double x, double h);

/// Harmonic flow (omega = 1).
PhasePoint harmonic_flow(PhasePoint x0, double t);
/// Inverted-oscillator flow (omega = 1).
PhasePoint inverted_flow(PhasePoint x0, double t);

}  // namespace moyal::oracle
