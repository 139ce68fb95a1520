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

#include "moyal/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "moyal/diagnostics.hpp"
#include "moyal/hamiltonian.hpp"
#include "oracles.hpp"

namespace moyal {
namespace {

const Lattice& lattice() {
  static const Lattice l = make_lattice(256, -12.8, 12.8, 1.0);  // dq = 0.1
  return l;
}

double max_abs(const CMatrix& m) { return m.cwiseAbs().maxCoeff(); }

TEST(Hamiltonian, RegistryAndValidation) {
  const auto names = potential_registry();
  for (const char* n : {"harmonic", "inverted", "quartic", "free", "polynomial"}) {
    EXPECT_NE(std::find(names.begin(), names.end(), n), names.end()) << n;
  }
  EXPECT_THROW(make_hamiltonian_spec("morse"), ValidationError);
  const HamiltonianSpec quartic = make_hamiltonian_spec("quartic", {{"lambda", 2.0}});
  EXPECT_DOUBLE_EQ(quartic.potential(1.5), 0.5 * std::pow(1.5, 4));
  EXPECT_DOUBLE_EQ(quartic.force(1.5), -2.0 * std::pow(1.5, 3));
  EXPECT_TRUE(quartic.confining());
  EXPECT_FALSE(quartic.quadratic());
  EXPECT_FALSE(make_hamiltonian_spec("inverted").confining());
  EXPECT_TRUE(polynomial_spec({0.0, 1.0, 0.5}).quadratic());
}

TEST(Hamiltonian, HarmonicSpectrum) {
  const OperatorMatrix h = build_hamiltonian(lattice(), make_hamiltonian_spec("harmonic"));
  EXPECT_LE(hermiticity_defect(h.matrix()), 1e-14);
  const SpectralPropagator prop(h);
  for (int n = 0; n < 20; ++n) EXPECT_NEAR(prop.energies()[n], n + 0.5, 1e-8) << n;
}

TEST(Hamiltonian, FreeSpectrumIsKinetic) {
  const Lattice l = make_lattice(64, -5.0, 5.0, 0.5);
  const SpectralPropagator prop(build_hamiltonian(l, make_hamiltonian_spec("free")));
  std::vector<double> kinetic;
  for (double p : l.p_grid()) kinetic.push_back(0.5 * p * p);
  std::sort(kinetic.begin(), kinetic.end());
  for (std::size_t k = 0; k < kinetic.size(); ++k) {
    EXPECT_NEAR(prop.energies()[static_cast<Eigen::Index>(k)], kinetic[k], 1e-10);
  }
}

TEST(Hamiltonian, InvertedIsHermitianWithRealSpectrum) {
  const OperatorMatrix h = build_hamiltonian(lattice(), make_hamiltonian_spec("inverted"));
  EXPECT_LE(hermiticity_defect(h.matrix()), 1e-14);
  Eigen::ComplexEigenSolver<CMatrix> es(h.matrix());
  EXPECT_LE(es.eigenvalues().imag().cwiseAbs().maxCoeff(), 1e-8);
}

TEST(Heisenberg, IdentityAtZeroAndEnergyConserved) {
  const OperatorMatrix h = build_hamiltonian(lattice(), make_hamiltonian_spec("quartic"));
  const OperatorMatrix x = position_operator(lattice());
  EXPECT_LE(max_abs(heisenberg_observable(h, x, 0.0).matrix() - x.matrix()), 1e-10);
  EXPECT_LE(max_abs(heisenberg_observable(h, h, 0.7).matrix() - h.matrix()),
            1e-10 * max_abs(h.matrix()));
}

// q(t) = q cos t + p sin t, so q(pi/2) = p on the low-lying states.
TEST(Heisenberg, HarmonicQuarterPeriod) {
  const Lattice& l = lattice();
  const OperatorMatrix h = build_hamiltonian(l, make_hamiltonian_spec("harmonic"));
  const OperatorMatrix qt =
      heisenberg_observable(h, position_operator(l), 0.5 * std::numbers::pi);
  const OperatorMatrix p = momentum_operator(l);
  for (int n : {0, 1, 3}) {
    const CVector psi = oscillator_state(l, n, {0.5, -0.5}).amplitudes();
    EXPECT_LE((qt.apply(psi) - p.apply(psi)).cwiseAbs().maxCoeff(), 1e-8) << n;
  }
}

TEST(Evolution, UnitaryAndEnergyConserving) {
  const Lattice& l = lattice();
  const OperatorMatrix h = build_hamiltonian(l, make_hamiltonian_spec("quartic"));
  const SpectralPropagator prop(h);
  const WaveFunction psi = gaussian_state(l, {1.0, 0.5});
  const double e0 = expectation(h, psi).real();
  for (double t : {0.3, 1.7, 6.0}) {
    const WaveFunction out = prop.evolve(psi, t);
    EXPECT_NEAR(out.norm(), 1.0, 1e-10);
    EXPECT_NEAR(expectation(h, out).real(), e0, 1e-8);
  }
}

TEST(Trajectory, StartsAtBasePointAndFollowsHarmonicFlow) {
  const PhasePoint x0{1.5, -0.5};
  const QuantumDynamics dyn(lattice(), make_hamiltonian_spec("harmonic"), {x0});
  const std::vector<double> times = linspace(0.0, 6.0, 25);
  const Trajectory tr = quantum_trajectory(dyn, x0, times);
  EXPECT_EQ(tr.provenance, Provenance::quantum);
  // Exact up to the window's plateau flatness.
  EXPECT_NEAR(tr.points[0].q, x0.q, 1e-10);
  EXPECT_NEAR(tr.points[0].p, x0.p, 1e-10);
  for (std::size_t k = 0; k < times.size(); ++k) {
    const PhasePoint ref = oracle::harmonic_flow(x0, times[k]);
    EXPECT_NEAR(tr.points[k].q, ref.q, 1e-6);
    EXPECT_NEAR(tr.points[k].p, ref.p, 1e-6);
  }
}

TEST(Trajectory, InvertedFlowInsideEscapeWindow) {
  const Lattice l = make_lattice(256, -16.0, 16.0, 1.0);
  const PhasePoint x0{0.5, 0.25};
  const QuantumDynamics dyn(l, make_hamiltonian_spec("inverted"), {x0});
  const EscapeScan scan = dyn.escape_scan(linspace(0.0, 4.0, 81), {x0});
  ASSERT_GE(scan.max_usable_time, 0.5);
  EXPECT_TRUE(scan.escaped);
  const std::vector<double> times = linspace(0.0, scan.max_usable_time, 11);
  const Trajectory tr = quantum_trajectory(dyn, x0, times);
  for (std::size_t k = 0; k < times.size(); ++k) {
    const PhasePoint ref = oracle::inverted_flow(x0, times[k]);
    EXPECT_NEAR(tr.points[k].q, ref.q, 1e-6);
    EXPECT_NEAR(tr.points[k].p, ref.p, 1e-6);
  }
  try {
    quantum_trajectory(dyn, x0, {0.0, 4.0});
    ADD_FAILURE() << "expected EscapeError";
  } catch (const EscapeError& e) {
    EXPECT_LT(e.max_usable_time(), 4.0);
  }
}

TEST(SmearedMean, CoherentWidthEqualsStateExpectation) {
  const Lattice& l = lattice();
  const HamiltonianSpec spec = make_hamiltonian_spec("quartic");
  const PhasePoint x0{1.0, 0.5};
  const QuantumDynamics dyn(l, spec, {x0});
  const PhaseSpaceFunction a = sample_symbol(l, [](double q, double p) {
    return cplx(std::exp(-0.3 * (q - 0.5) * (q - 0.5) - 0.2 * p * p));
  });
  const std::vector<double> times{0.0, 0.8, 2.5};
  const std::vector<double> smeared = smeared_mean(dyn, a, x0, l.hbar(), times);
  const OperatorMatrix a_op = weyl_quantize(a);
  const WaveFunction psi = gaussian_state(l, x0);
  for (std::size_t k = 0; k < times.size(); ++k) {
    const WaveFunction psi_t = dyn.propagator().evolve(psi, times[k]);
    EXPECT_NEAR(smeared[k], expectation(a_op, psi_t).real(), 1e-8);
  }
}

TEST(SmearedMean, ZeroWidthIsSymbolEvaluation) {
  const PhasePoint x0{1.0, 0.5};
  const QuantumDynamics dyn(lattice(), make_hamiltonian_spec("quartic"), {x0});
  const std::vector<double> times{0.0, 0.5, 1.0};
  const auto q_symbol = weyl_dequantize(dyn.coordinates().q);
  const std::vector<double> smeared = smeared_mean(dyn, q_symbol, x0, 0.0, times);
  const std::vector<PhasePoint> sym = dyn.symbols_at(x0, times);
  for (std::size_t k = 0; k < times.size(); ++k) EXPECT_NEAR(smeared[k], sym[k].q, 1e-10);
  EXPECT_THROW(smeared_mean(dyn, q_symbol, x0, 1e-4, times), ValidationError);
  EXPECT_THROW(smeared_mean(dyn, q_symbol, x0, -1.0, times), ValidationError);
}

// Gaussian smearing preserves means of linear symbols, and the harmonic flow
// keeps them linear.
TEST(SmearedMean, HarmonicLinearSymbolIndependentOfWidth) {
  const PhasePoint x0{0.5, 0.0};
  DynamicsOptions opts;
  opts.window = CoordinateWindow{7.5, 0.5};
  const QuantumDynamics dyn(lattice(), make_hamiltonian_spec("harmonic"), {x0}, opts);
  const auto q_symbol = weyl_dequantize(dyn.coordinates().q);
  const std::vector<double> times{0.0, 1.0, 2.0, 3.0};
  for (double eps : {0.0, 0.5, 1.0, 2.0}) {
    const std::vector<double> m = smeared_mean(dyn, q_symbol, x0, eps, times);
    for (std::size_t k = 0; k < times.size(); ++k) {
      EXPECT_NEAR(m[k], oracle::harmonic_flow(x0, times[k]).q, 1e-6) << "eps " << eps;
    }
  }
}

TEST(Egorov, QuadraticIsExactAndZeroAtStart) {
  const HamiltonianSpec spec = make_hamiltonian_spec("harmonic");
  const std::vector<Lattice> lattices{lattice(), make_lattice(256, -12.8, 12.8, 0.5)};
  for (double r : egorov_residual(spec, {1.0, 0.5}, 1.3, lattices)) EXPECT_LE(r, 1e-6);
  const HamiltonianSpec quartic = make_hamiltonian_spec("quartic");
  for (double r : egorov_residual(quartic, {1.0, 0.0}, 0.0, {lattice()})) EXPECT_LE(r, 1e-12);
  EXPECT_THROW(egorov_residual(spec, {1.0, 0.5}, 1.0, {}), ValidationError);
}

TEST(Window, TooSmallLatticeIsRejected) {
  const Lattice tiny = make_lattice(16, -2.0, 2.0, 1.0);
  EXPECT_THROW(QuantumDynamics(tiny, make_hamiltonian_spec("quartic"), {{0.0, 0.0}}),
               ValidationError);
}

}  // namespace
}  // namespace moyal
