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

#include "moyal/lattice.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "fft.hpp"
#include "moyal/diagnostics.hpp"

namespace moyal {

double Lattice::h() const { return 2.0 * std::numbers::pi * hbar_; }

std::optional<std::size_t> Lattice::half_index(double q) const {
  const double x = (q - q_min_) / (0.5 * dq_);
  const double m = std::round(x);
  if (m < 0.0 || m > static_cast<double>(half_size() - 1)) return std::nullopt;
  const double scale = std::max({1.0, std::abs(q_min_), std::abs(q_max_)});
  if (std::abs(half_q(static_cast<std::size_t>(m)) - q) > 1e-12 * scale) {
    return std::nullopt;
  }
  return static_cast<std::size_t>(m);
}

std::vector<double> Lattice::q_grid() const {
  std::vector<double> out(n_);
  for (std::size_t j = 0; j < n_; ++j) out[j] = q(j);
  return out;
}

std::vector<double> Lattice::p_grid() const {
  std::vector<double> out(n_);
  for (std::size_t k = 0; k < n_; ++k) out[k] = p(k);
  return out;
}

std::vector<double> Lattice::symbol_p_grid() const {
  std::vector<double> out(n_);
  for (std::size_t j = 0; j < n_; ++j) out[j] = symbol_p(j);
  return out;
}

CVector Lattice::to_momentum(const CVector& psi) const {
  if (static_cast<std::size_t>(psi.size()) != n_) {
    throw ValidationError("to_momentum: amplitude count does not match lattice");
  }
  std::vector<cplx> in(n_), out;
  for (std::size_t a = 0; a < n_; ++a) in[a] = (a % 2 ? -1.0 : 1.0) * psi[a];
  detail::Fft fft;
  fft.forward(out, in);
  const double c = dq_ / std::sqrt(h());
  CVector res(n_);
  for (std::size_t k = 0; k < n_; ++k) {
    res[k] = c * std::polar(1.0, -p(k) * q_min_ / hbar_) * out[k];
  }
  return res;
}

CVector Lattice::from_momentum(const CVector& psi_p) const {
  if (static_cast<std::size_t>(psi_p.size()) != n_) {
    throw ValidationError("from_momentum: amplitude count does not match lattice");
  }
  std::vector<cplx> in(n_), out;
  for (std::size_t k = 0; k < n_; ++k) {
    in[k] = std::polar(1.0, p(k) * q_min_ / hbar_) * psi_p[k];
  }
  detail::Fft fft;
  fft.backward(out, in);
  const double c = dp_ / std::sqrt(h());
  CVector res(n_);
  for (std::size_t a = 0; a < n_; ++a) res[a] = c * (a % 2 ? -1.0 : 1.0) * out[a];
  return res;
}

Lattice make_lattice(std::size_t n_points, double q_min, double q_max,
                     double hbar) {
  if (n_points < 8 || (n_points & (n_points - 1)) != 0) {
    std::ostringstream os;
    os << "n_points must be a power of two >= 8, got " << n_points;
    throw ValidationError(os.str());
  }
  if (!std::isfinite(q_min) || !std::isfinite(q_max) || !(q_max > q_min)) {
    throw ValidationError("q interval is empty or not finite");
  }
  if (!std::isfinite(hbar) || !(hbar > 0.0)) {
    throw ValidationError("hbar must be positive");
  }
  Lattice l;
  l.n_ = n_points;
  l.q_min_ = q_min;
  l.q_max_ = q_max;
  l.hbar_ = hbar;
  l.dq_ = (q_max - q_min) / static_cast<double>(n_points);
  l.dp_ = 2.0 * std::numbers::pi * hbar / (static_cast<double>(n_points) * l.dq_);
  return l;
}

std::vector<double> half_grid(const Lattice& lattice) {
  std::vector<double> out(lattice.half_size());
  for (std::size_t m = 0; m < out.size(); ++m) out[m] = lattice.half_q(m);
  return out;
}

void require_same_lattice(const Lattice& a, const Lattice& b, const char* what) {
  if (!(a == b)) {
    throw ValidationError(std::string(what) + ": operands live on different lattices");
  }
}

}  // namespace moyal
