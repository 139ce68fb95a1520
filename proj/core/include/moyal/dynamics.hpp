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

#include <memory>
#include <optional>
#include <vector>

#include "moyal/hamiltonian.hpp"
#include "moyal/lattice.hpp"
#include "moyal/states.hpp"
#include "moyal/trajectory.hpp"
#include "moyal/weyl.hpp"

namespace moyal {

/// Eigendecomposition H = V diag(E) V^+ shared by every time evaluation.
class SpectralPropagator {
 public:
  explicit SpectralPropagator(const OperatorMatrix& hamiltonian);

  const Lattice& lattice() const { return lattice_; }
  const Eigen::VectorXd& energies() const { return energies_; }
  /// Columns are eigenvectors (orthonormal in the plain Euclidean product).
  CMatrix vectors() const;

  /// V^+ M V.
  CMatrix to_eigenbasis(const CMatrix& m) const;
  /// V M V^+.
  CMatrix from_eigenbasis(const CMatrix& m) const;
  /// exp(i E_k t / hbar).
  CVector phases(double t) const;

  /// U^+(t) A U(t) with U(t) = exp(-i t H / hbar).
  OperatorMatrix heisenberg(const OperatorMatrix& op, double t) const;
  WaveFunction evolve(const WaveFunction& psi, double t) const;

 private:
  Lattice lattice_;
  Eigen::VectorXd energies_;
  // Real eigenvectors when H is real symmetric (the usual case), else complex.
  Eigen::MatrixXd real_vectors_;
  CMatrix complex_vectors_;
  bool real_ = false;
};

/// Heisenberg picture of one operator: U^+(t) A U(t).
OperatorMatrix heisenberg_observable(const OperatorMatrix& hamiltonian,
                                     const OperatorMatrix& op, double t);

/**
 * Tr[B A(t)] = sum_kl B~_lk A~_kl exp(i (E_k - E_l) t / hbar) with the
 * eigenbasis matrices precomputed, so each time costs O(N^2).
 */
class TracePairing {
 public:
  TracePairing(const CMatrix& b_eigen, const CMatrix& a_eigen);
  cplx operator()(const CVector& phases) const;

 private:
  CMatrix c_;
};

/// Flat-top phase-space window g = erfc((r(x) - radius)/width)/2.
struct CoordinateWindow {
  double radius = 0.0;
  double width = 0.0;
};

/**
 * Radial coordinate of the window: r = sqrt(2 (H(x) - min V)) for confining
 * potentials, so the window is nearly invariant under the flow, and
 * sqrt(q^2 + p^2) otherwise.
 */
double window_coordinate(const HamiltonianSpec& spec, PhasePoint x);

/// Window symbol g sampled on the half-grid.
PhaseSpaceFunction window_symbol(const Lattice& lattice, const HamiltonianSpec& spec,
                                 const CoordinateWindow& window);

/// Throws ValidationError if the window tail reaches the outer fifth of the
/// position box or of the symbol momentum band.
void check_window_fits(const Lattice& lattice, const HamiltonianSpec& spec,
                       const CoordinateWindow& window);

/// Radius below which the window equals 1 to about 1e-10.
double plateau_radius(const CoordinateWindow& window);

/**
 * Width 1.5 sqrt(hbar), falling back to 1.0 sqrt(hbar) (0.5 sqrt(hbar) for
 * quadratic potentials) if the lattice is too small. For confining potentials (r conserved by the flow) the plateau just
 * covers the readout points; otherwise the window is made as large as the
 * lattice allows and the flow is tracked against it (see escape_scan).
 */
CoordinateWindow default_window(const Lattice& lattice, const HamiltonianSpec& spec,
                                const std::vector<PhasePoint>& readout);

/// Bounded stand-ins for q and p: quantize(q g) and quantize(p g). Their
/// symbols equal q and p on the window plateau.
struct CoordinateObservables {
  OperatorMatrix q;
  OperatorMatrix p;
  CoordinateWindow window;
};

CoordinateObservables coordinate_observables(const Lattice& lattice,
                                             const HamiltonianSpec& spec,
                                             const CoordinateWindow& window);

struct EscapeScan {
  std::vector<double> times;
  /// ||Pi X(t)||_F / ||X(t)||_F for the projector Pi onto the monitored edge
  /// strips, max over Q and P. The symbol error at the readout points stays
  /// below about this fraction.
  std::vector<double> edge_fraction;
  /// Largest window coordinate r reached by the classical flow of the readout
  /// points; the symbols read there are exact only inside the plateau.
  std::vector<double> flow_radius;
  double threshold = 1e-6;
  double plateau = 0.0;
  /// Last time of the leading run of samples passing both checks; -1 if none.
  double max_usable_time = -1.0;
  bool escaped = false;
};

struct DynamicsOptions {
  /// Overrides default_window when set.
  std::optional<CoordinateWindow> window;
  /// Position strip width in cells at each box edge.
  std::size_t edge_cells = 5;
  double escape_threshold = 1e-6;
};

/**
 * Quantum dynamics of H on one lattice: spectral propagator, regularized
 * coordinate observables and the escape monitor. Construction costs one
 * N x N eigensolve plus a few N^3 products. A symbol query costs two N^3
 * basis changes per readout point, then O(N^2) per time.
 */
class QuantumDynamics {
 public:
  QuantumDynamics(const Lattice& lattice, const HamiltonianSpec& spec,
                  const std::vector<PhasePoint>& readout, DynamicsOptions options = {});

  const Lattice& lattice() const { return lattice_; }
  const HamiltonianSpec& spec() const { return spec_; }
  const OperatorMatrix& hamiltonian() const { return hamiltonian_; }
  const SpectralPropagator& propagator() const { return *propagator_; }
  const CoordinateObservables& coordinates() const { return coords_; }
  double hbar() const { return lattice_.hbar(); }

  /// Tr[B X(t)] pairings for the two coordinate observables.
  struct Pairing {
    TracePairing q;
    TracePairing p;
    PhasePoint at(const CVector& phases) const;
  };
  Pairing pair_coordinates(const OperatorMatrix& b) const;

  /// Symbol of (Q(t), P(t)) at x0 = 2 Tr[Delta(x0) X(t)], without escape check.
  std::vector<PhasePoint> symbols_at(PhasePoint x0, const std::vector<double>& times) const;

  /**
   * Escape monitor for symbols read at the given points: the share of the
   * evolved coordinate observables within edge_cells of the box edges or of
   * the momentum band edge (content at p aliases onto p -+ P/2), and whether
   * the classical flow of the readout points is still inside the plateau.
   */
  EscapeScan escape_scan(const std::vector<double>& times,
                         const std::vector<PhasePoint>& readout) const;
  /// Throws EscapeError if any of the times fails the monitor.
  void require_no_escape(const std::vector<double>& times,
                         const std::vector<PhasePoint>& readout) const;

 private:
  Lattice lattice_;
  HamiltonianSpec spec_;
  OperatorMatrix hamiltonian_;
  std::shared_ptr<const SpectralPropagator> propagator_;
  CoordinateObservables coords_;
  CMatrix q_eigen_;
  CMatrix p_eigen_;
  CMatrix qq_eigen_;
  CMatrix pp_eigen_;
  double q_norm2_ = 0.0;
  double p_norm2_ = 0.0;
  DynamicsOptions options_;
};

/// X(x0, t; hbar) as the symbol of the evolved coordinates at x0.
Trajectory quantum_trajectory(const QuantumDynamics& dyn, PhasePoint x0,
                              const std::vector<double>& times);

/**
 * Gaussian-smeared mean integral W_eps(x; x0) A(x, t; hbar) dx with
 * W_eps = (pi eps)^{-1} exp(-|x - x0|^2 / eps). eps = 0 evaluates the symbol
 * at x0; eps = hbar equals the coherent-state expectation value.
 */
std::vector<double> smeared_mean(const QuantumDynamics& dyn, const PhaseSpaceFunction& a,
                                 PhasePoint x0, double epsilon,
                                 const std::vector<double>& times);

/// ||X(x0, t; hbar) - x(t, x0)|| for each lattice (one per hbar).
std::vector<double> egorov_residual(const HamiltonianSpec& spec, PhasePoint x0, double t,
                                    const std::vector<Lattice>& lattices,
                                    DynamicsOptions options = {});

}  // namespace moyal
