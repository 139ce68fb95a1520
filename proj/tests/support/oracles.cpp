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

#include "oracles.hpp"

#include <cmath>
#include <numbers>

namespace moyal::oracle {

namespace {
constexpr double kPi = std::numbers::pi;
}

cplx hermite_function(int n, double q, PhasePoint x0, double hbar) {
  const double xi = (q - x0.q) / std::sqrt(hbar);
  const double norm = std::pow(kPi * hbar, -0.25) /
                      std::sqrt(std::pow(2.0, n) * std::tgamma(n + 1.0));
  const double h = std::hermite(static_cast<unsigned>(n), xi);
  return norm * h * std::exp(-0.5 * xi * xi) * std::polar(1.0, x0.p * (q - x0.q) / hbar);
}

WaveFunction sampled_state(const Lattice& lattice, const std::function<cplx(double)>& f) {
  CVector v(static_cast<Eigen::Index>(lattice.size()));
  for (std::size_t j = 0; j < lattice.size(); ++j) v[static_cast<Eigen::Index>(j)] = f(lattice.q(j));
  return WaveFunction(lattice, v);
}

double oscillator_wigner(int n, double q, double p, PhasePoint x0, double hbar) {
  const double r2 = (q - x0.q) * (q - x0.q) + (p - x0.p) * (p - x0.p);
  const double sign = n % 2 == 0 ? 1.0 : -1.0;
  return sign / (kPi * hbar) * std::exp(-r2 / hbar) *
         std::laguerre(static_cast<unsigned>(n), 2.0 * r2 / hbar);
}

cplx momentum_amplitude(const WaveFunction& psi, double p) {
  const Lattice& l = psi.lattice();
  cplx s = 0.0;
  for (std::size_t a = 0; a < l.size(); ++a) s += psi[a] * std::polar(1.0, -p * l.q(a) / l.hbar());
  return s * l.dq() / std::sqrt(2.0 * kPi * l.hbar());
}

CVector displace(const Lattice& lattice, const CVector& psi, double alpha, double beta) {
  const double hbar = lattice.hbar();
  CVector mom = lattice.to_momentum(psi);
  for (std::size_t k = 0; k < lattice.size(); ++k) {
    mom[static_cast<Eigen::Index>(k)] *= std::polar(1.0, -alpha * lattice.p(k) / hbar);
  }
  CVector out = lattice.from_momentum(mom);
  for (std::size_t a = 0; a < lattice.size(); ++a) {
    out[static_cast<Eigen::Index>(a)] *=
        std::polar(1.0, beta * lattice.q(a) / hbar - 0.5 * alpha * beta / hbar);
  }
  return out;
}

CVector translate_t(const Lattice& lattice, const CVector& psi, PhasePoint y) {
  return displace(lattice, psi, -2.0 * y.q, -2.0 * y.p);
}

cplx quantizer_from_translations(const Lattice& lattice, const CVector& phi, const CVector& psi,
                                 PhasePoint x, double extent, int n_y) {
  const double hbar = lattice.hbar();
  const double h = 2.0 * extent / (n_y - 1);
  cplx sum = 0.0;
  for (int i = 0; i < n_y; ++i) {
    const double yq = -extent + i * h;
    for (int j = 0; j < n_y; ++j) {
      const double yp = -extent + j * h;
      const CVector t = translate_t(lattice, psi, {yq, yp});
      const cplx m = phi.dot(t) * lattice.dq();  // conj(phi) . t
      // x . J y with J y = (y_p, -y_q).
      const double phase = 2.0 * (x.q * yp - x.p * yq) / hbar;
      const double w = (i == 0 || i == n_y - 1 ? 0.5 : 1.0) * (j == 0 || j == n_y - 1 ? 0.5 : 1.0);
      sum += w * std::polar(1.0, phase) * m;
    }
  }
  return sum * h * h / (kPi * hbar);
}

double central_difference(const std::function<double(double)>& f, double x, double h) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

PhasePoint harmonic_flow(PhasePoint x0, double t) {
  return {x0.q * std::cos(t) + x0.p * std::sin(t), x0.p * std::cos(t) - x0.q * std::sin(t)};
}

PhasePoint inverted_flow(PhasePoint x0, double t) {
  return {x0.q * std::cosh(t) + x0.p * std::sinh(t), x0.p * std::cosh(t) + x0.q * std::sinh(t)};
}

}  // namespace moyal::oracle
