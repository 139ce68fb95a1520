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

#include "moyal/states.hpp"

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "moyal/diagnostics.hpp"
#include "moyal/weyl.hpp"
#include "oracles.hpp"

namespace moyal {
namespace {

const Lattice& lattice() {
  static const Lattice l = make_lattice(256, -8.0, 8.0, 1.0);
  return l;
}

TEST(GaussianState, GroundValueAtOrigin) {
  const WaveFunction g = gaussian_state(lattice(), {0.0, 0.0});
  EXPECT_NEAR(g[128].real(), std::pow(std::numbers::pi, -0.25), 1e-15);
  EXPECT_NEAR(g.norm(), 1.0, 1e-10);
}

TEST(GaussianState, BoostChangesOnlyPhase) {
  const WaveFunction a = gaussian_state(lattice(), {0.0, 0.0});
  const WaveFunction b = gaussian_state(lattice(), {0.0, 1.7});
  EXPECT_LE((a.amplitudes().cwiseAbs() - b.amplitudes().cwiseAbs()).cwiseAbs().maxCoeff(),
            1e-15);
}

TEST(GaussianState, PeakFollowsCentre) {
  const WaveFunction g = gaussian_state(lattice(), {2.0, 0.0});
  Eigen::Index peak = 0;
  g.amplitudes().cwiseAbs2().maxCoeff(&peak);
  EXPECT_DOUBLE_EQ(lattice().q(static_cast<std::size_t>(peak)), 2.0);
}

TEST(OscillatorState, MatchesHermiteFunctions) {
  const PhasePoint x0{0.5, -0.75};
  for (int n = 0; n < 6; ++n) {
    const WaveFunction psi = oscillator_state(lattice(), n, x0);
    const WaveFunction ref = oracle::sampled_state(
        lattice(), [&](double q) { return oracle::hermite_function(n, q, x0, 1.0); });
    EXPECT_LE((psi.amplitudes() - ref.amplitudes()).cwiseAbs().maxCoeff(), 1e-12) << n;
    EXPECT_NEAR(psi.norm(), 1.0, 1e-10);
  }
}

TEST(Density, PureStateIsTraceOneProjector) {
  const WaveFunction psi = oscillator_state(lattice(), 2, {1.0, 0.5});
  const OperatorMatrix rho = density_from_pure(psi);
  EXPECT_TRUE(rho.hermitian());
  EXPECT_LE(hermiticity_defect(rho.matrix()), 1e-12);
  EXPECT_NEAR(std::abs(trace_of(rho) - 1.0), 0.0, 1e-10);
  EXPECT_LE(((rho * rho).matrix() - rho.matrix()).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Density, OrthogonalStatesHaveZeroOverlap) {
  const OperatorMatrix r0 = density_from_pure(oscillator_state(lattice(), 0, {}));
  const OperatorMatrix r1 = density_from_pure(oscillator_state(lattice(), 1, {}));
  EXPECT_LE(std::abs(trace_of(r0 * r1)), 1e-10);
}

TEST(Displacement, DirectionMustBeUnit) {
  EXPECT_NO_THROW(make_displacement({0, 0}, {0.6, 0.8}));
  EXPECT_THROW(make_displacement({0, 0}, {1.0, 1.0}), ValidationError);
}

TEST(Translation, MovesCoherentStates) {
  const PhasePoint y{1.5, -0.5};
  const WaveFunction moved = translate_state(gaussian_state(lattice(), {}), y);
  // The shift is periodic; the tail wrapped in from q = -8 is e^{-6.5^2/2} pi^{-1/4}.
  const cplx phase = std::polar(1.0, 0.5 * y.q * y.p / lattice().hbar());
  EXPECT_LE((moved.amplitudes() - phase * gaussian_state(lattice(), y).amplitudes())
                .cwiseAbs()
                .maxCoeff(),
            1e-9);
  const WaveFunction psi = oscillator_state(lattice(), 2, {0.5, 0.25});
  const CVector ref = oracle::displace(lattice(), psi.amplitudes(), y.q, y.p);
  EXPECT_LE((translate_state(psi, y).amplitudes() - ref).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_NEAR(translate_state(psi, y).norm(), 1.0, 1e-12);
}

TEST(SingularDensity, IsHermitianAndFlaggedSingular) {
  const auto rho = singular_density_rho0v(lattice(), make_displacement({0.5, 0.2}, {0.6, 0.8}));
  EXPECT_EQ(rho.kind(), OperatorKind::singular);
  EXPECT_LE(hermiticity_defect(rho.matrix()), 1e-12);
  EXPECT_THROW(expectation(rho, gaussian_state(lattice(), {})), ValidationError);
  EXPECT_THROW(wigner_transform(rho), ValidationError);
}

TEST(SingularDensity, MomentumDirectionIsWeightedQuantizer) {
  const PhasePoint x0{0.5, 0.3};
  const auto rho = singular_density_rho0v(lattice(), make_displacement(x0, {0.0, 1.0}));
  const CMatrix delta = quantizer_matrix(lattice(), x0).matrix();
  const Eigen::Index n = delta.rows();
  double err = 0.0;
  for (Eigen::Index a = 0; a < n; ++a) {
    for (Eigen::Index b = 0; b < n; ++b) {
      const double s = (lattice().q(static_cast<std::size_t>(a)) -
                        lattice().q(static_cast<std::size_t>(b))) /
                       lattice().hbar();
      err = std::max(err, std::abs(rho.matrix()(a, b) - 2.0 * cplx(0.0, s) * delta(a, b)));
    }
  }
  EXPECT_LE(err, 1e-12);
}

// Tr(rho0v A) is the directional derivative of the symbol of A at x0.
TEST(SingularDensity, PairsToSymbolGradient) {
  const Lattice& l = lattice();
  const auto gauss = [](double q, double p) {
    return cplx(std::exp(-0.5 * (q - 0.3) * (q - 0.3) - 0.4 * (p + 0.2) * (p + 0.2)), 0.0);
  };
  const OperatorMatrix a = weyl_quantize(sample_symbol(l, gauss));
  const PhasePoint x0{0.5, 0.25};
  const double h = 0.5 * l.dq();
  for (PhasePoint v : {PhasePoint{1.0, 0.0}, PhasePoint{0.0, 1.0}, PhasePoint{0.6, 0.8}}) {
    const auto rho = singular_density_rho0v(l, make_displacement(x0, v));
    const double traced = trace_of(rho * a).real();
    // Oracle: the q-derivative as the same central difference over the
    // neighbouring half-grid rows, the p-derivative analytically.
    const double dq_part =
        (gauss(x0.q + h, x0.p).real() - gauss(x0.q - h, x0.p).real()) / (2.0 * h);
    const double dp_part = -0.8 * (x0.p + 0.2) * gauss(x0.q, x0.p).real();
    EXPECT_NEAR(traced, v.q * dq_part + v.p * dp_part, 1e-10);
    // And within O(dq^2) of the exact derivative.
    const double exact_q = -(x0.q - 0.3) * gauss(x0.q, x0.p).real();
    EXPECT_NEAR(traced, v.q * exact_q + v.p * dp_part, 1e-3);
  }
}

TEST(SingularDensity, LinearInDirection) {
  const Lattice& l = lattice();
  const PhasePoint x0{0.5, 0.25};
  const CMatrix rq = singular_density_rho0v(l, make_displacement(x0, {1, 0})).matrix();
  const CMatrix rp = singular_density_rho0v(l, make_displacement(x0, {0, 1})).matrix();
  const CMatrix rv = singular_density_rho0v(l, make_displacement(x0, {0.6, 0.8})).matrix();
  EXPECT_LE((rv - 0.6 * rq - 0.8 * rp).cwiseAbs().maxCoeff(), 1e-8);
}

}  // namespace
}  // namespace moyal
