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

#include "moyal/tomography.hpp"

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "moyal/diagnostics.hpp"
#include "oracles.hpp"

namespace moyal {
namespace {

constexpr double kPi = std::numbers::pi;

const Lattice& lattice() {
  static const Lattice l = make_lattice(128, -8.0, 8.0, 1.0);
  return l;
}

TEST(Radon, GroundStateProjectionIsRotationInvariant) {
  const Tomogram tom = radon_transform(wigner_of(gaussian_state(lattice(), {})), 16);
  ASSERT_EQ(tom.n_angles(), 16u);
  ASSERT_EQ(tom.n_q(), lattice().size());
  double err = 0.0;
  for (std::size_t i = 0; i < tom.n_angles(); ++i) {
    for (std::size_t m = 0; m < tom.n_q(); ++m) {
      const double q = tom.q(m);
      err = std::max(err, std::abs(tom.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(m)) -
                                   std::exp(-q * q) / std::sqrt(kPi)));
    }
    EXPECT_NEAR(tom.slice_integral(i), 1.0, 1e-6);
  }
  EXPECT_LE(err, 1e-10);
}

// The theta = 0 slice sampled on the lattice is the position density; the
// theta = pi/2 slice sampled on the symbol momenta is the momentum density.
TEST(Radon, AxisSlicesAreMarginals) {
  const Lattice& l = lattice();
  const WaveFunction psi = oscillator_state(l, 2, {1.0, -0.5});
  const PhaseSpaceFunction w = wigner_of(psi);
  const Tomogram pos = radon_transform(w, {0.0}, l.q_min(), l.dq(), l.size());
  const Tomogram mom = radon_transform(w, {0.5 * kPi}, l.symbol_p(0), l.symbol_dp(), l.size());
  double pos_err = 0.0, mom_err = 0.0;
  for (std::size_t m = 0; m < l.size(); ++m) {
    const auto mi = static_cast<Eigen::Index>(m);
    pos_err = std::max(pos_err, std::abs(pos.values(0, mi) - std::norm(psi[m])));
    mom_err = std::max(mom_err, std::abs(mom.values(0, mi) -
                                         std::norm(oracle::momentum_amplitude(psi, mom.q(m)))));
  }
  EXPECT_LE(pos_err, 1e-9);
  EXPECT_LE(mom_err, 1e-9);
}

TEST(Radon, NonnegativeForPureStates) {
  for (int n : {1, 3}) {
    const Tomogram tom = radon_transform(wigner_of(oscillator_state(lattice(), n, {0.5, 0.5})), 32);
    EXPECT_GE(tom.values.minCoeff(), -1e-9);
  }
}

TEST(InverseRadon, RecoversNegativeOrigin) {
  const PhaseSpaceFunction w = wigner_of(oscillator_state(lattice(), 1, {}));
  const PhaseSpaceFunction rec = inverse_radon(radon_transform(w, 128));
  // Half-grid row 128 is q = 0; symbol column 64 is p = 0.
  EXPECT_NEAR(rec(128, 64).real(), -1.0 / kPi, 0.02 / kPi);
  const double rel = (rec.values() - w.values()).norm() / w.values().norm();
  EXPECT_LE(rel, 1e-3);
}

TEST(InverseRadon, ZeroTomogramGivesZeroField) {
  Tomogram tom = radon_transform(wigner_of(gaussian_state(lattice(), {})), 64);
  tom.values.setZero();
  EXPECT_EQ(inverse_radon(tom).values().cwiseAbs().maxCoeff(), 0.0);
}

TEST(InverseRadon, WarnsBelowSixtyFourAngles) {
  const Tomogram tom = radon_transform(wigner_of(gaussian_state(lattice(), {})), 8);
  WarningCapture capture;
  inverse_radon(tom);
  ASSERT_EQ(capture.messages().size(), 1u);
  EXPECT_NE(capture.messages()[0].find("8 angles"), std::string::npos) << capture.messages()[0];
}

TEST(RampKernel, MatchesQuadrature) {
  const double band = 3.0;
  for (double s : {0.0, 1e-7, 0.4, 2.5}) {
    // Midpoint rule for (2 pi)^-2 integral_{-K}^{K} |k| cos(ks) dk.
    const int n = 200000;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
      const double k = (i + 0.5) * band / n;
      sum += k * std::cos(k * s);
    }
    const double ref = 2.0 * sum * band / n / (4.0 * kPi * kPi);
    EXPECT_NEAR(ramp_kernel(s, band), ref, 1e-9) << s;
  }
}

TEST(TomographicMean, AgreesWithPhaseSpaceMean) {
  const Lattice& l = lattice();
  const PhaseSpaceFunction w = wigner_of(gaussian_state(l, {2.0, 1.0}));
  const Tomogram tom = radon_transform(w, 256);
  const auto mean = [&](const PhaseSpaceSampler& f) {
    return tomographic_mean(tom, sample_symbol(l, f));
  };
  EXPECT_NEAR(mean([](double, double) { return cplx(1.0); }), 1.0, 1e-4);
  EXPECT_NEAR(mean([](double q, double) { return cplx(q); }), 2.0, 1e-4);
  EXPECT_NEAR(mean([](double q, double p) { return cplx(q * q + p * p); }), 2.0 * 2.0 + 1.0 + 1.0, 1e-4);
}

// Parseval: with a decaying observable the k-space form of the mean,
// integral dtheta integral |k| dk A~(k n) T(k), can be summed directly.
TEST(TomographicMean, FourierFormForDecayingObservable) {
  const Lattice& l = lattice();
  const PhaseSpaceFunction w = wigner_of(gaussian_state(l, {0.5, -0.5}));
  const std::size_t n_angles = 128;
  const Tomogram tom = radon_transform(w, n_angles);
  const double s = 0.8;  // A = exp(-(q^2 + p^2) / (2 s^2))
  const PhaseSpaceFunction a = sample_symbol(l, [&](double q, double p) {
    return cplx(std::exp(-(q * q + p * p) / (2.0 * s * s)));
  });
  // A~(kappa) = (2 pi)^-2 integral A e^{-i kappa x} dx = s^2/(2 pi) exp(-s^2 |kappa|^2 / 2).
  const double dk = 0.02;
  double sum = 0.0;
  for (std::size_t i = 0; i < n_angles; ++i) {
    for (double k = -12.0; k <= 12.0; k += dk) {
      cplx t = 0.0;
      for (std::size_t m = 0; m < tom.n_q(); ++m) {
        t += tom.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(m)) *
             std::polar(1.0, k * tom.q(m));
      }
      t *= tom.q_step;
      const double a_hat = s * s / (2.0 * kPi) * std::exp(-0.5 * s * s * k * k);
      sum += std::abs(k) * a_hat * t.real() * dk;
    }
  }
  sum *= kPi / static_cast<double>(n_angles);
  const double weyl = phase_space_integral(PhaseSpaceFunction(
      l, RowGrid::half, a.values().cwiseProduct(w.values()))).real();
  EXPECT_NEAR(sum, weyl, 1e-4);
  EXPECT_NEAR(tomographic_mean(tom, a), weyl, 1e-4);
}

TEST(Tomogram, ValidationRejectsBadAngles) {
  Tomogram tom = radon_transform(wigner_of(gaussian_state(lattice(), {})), 4);
  EXPECT_NO_THROW(tom.validate());
  tom.thetas[3] = kPi;
  EXPECT_THROW(tom.validate(), ValidationError);
  EXPECT_THROW(radon_transform(wigner_of(gaussian_state(lattice(), {})), {0.5, 0.2}, -5.0, 0.1, 100),
               ValidationError);
}

}  // namespace
}  // namespace moyal
