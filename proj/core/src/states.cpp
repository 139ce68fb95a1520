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
#include <sstream>
#include <utility>

#include "moyal/diagnostics.hpp"

namespace moyal {

WaveFunction::WaveFunction(Lattice lattice, CVector amplitudes)
    : lattice_(std::move(lattice)), amp_(std::move(amplitudes)) {
  if (static_cast<std::size_t>(amp_.size()) != lattice_.size()) {
    throw ValidationError("WaveFunction: amplitude count does not match lattice");
  }
}

double WaveFunction::norm() const {
  return std::sqrt(amp_.squaredNorm() * lattice_.dq());
}

cplx WaveFunction::inner(const WaveFunction& other) const {
  require_same_lattice(lattice_, other.lattice_, "inner");
  return amp_.dot(other.amp_) * lattice_.dq();
}

WaveFunction WaveFunction::normalized() const {
  const double n = norm();
  if (!(n > 0.0)) throw NumericalError("cannot normalize a zero wavefunction");
  return WaveFunction(lattice_, amp_ / n);
}

OperatorMatrix::OperatorMatrix(Lattice lattice, CMatrix matrix,
                               OperatorKind kind, bool hermitian)
    : lattice_(std::move(lattice)),
      m_(std::move(matrix)),
      kind_(kind),
      hermitian_(hermitian) {
  const auto n = static_cast<Eigen::Index>(lattice_.size());
  if (m_.rows() != n || m_.cols() != n) {
    throw ValidationError("OperatorMatrix: matrix shape does not match lattice");
  }
  if (hermitian_ && hermiticity_defect(m_) > 1e-12) {
    throw ValidationError("OperatorMatrix: flagged Hermitian but M != M^+");
  }
}

cplx OperatorMatrix::kernel(std::size_t a, std::size_t b) const {
  return m_(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) /
         lattice_.dq();
}

OperatorMatrix OperatorMatrix::adjoint() const {
  return OperatorMatrix(lattice_, m_.adjoint(), kind_, hermitian_);
}

WaveFunction OperatorMatrix::apply(const WaveFunction& psi) const {
  require_same_lattice(lattice_, psi.lattice(), "apply");
  return WaveFunction(lattice_, m_ * psi.amplitudes());
}

OperatorMatrix OperatorMatrix::operator*(const OperatorMatrix& other) const {
  require_same_lattice(lattice_, other.lattice_, "operator product");
  return OperatorMatrix(lattice_, m_ * other.m_);
}

OperatorMatrix OperatorMatrix::operator+(const OperatorMatrix& other) const {
  require_same_lattice(lattice_, other.lattice_, "operator sum");
  return OperatorMatrix(lattice_, m_ + other.m_);
}

OperatorMatrix OperatorMatrix::operator-(const OperatorMatrix& other) const {
  require_same_lattice(lattice_, other.lattice_, "operator difference");
  return OperatorMatrix(lattice_, m_ - other.m_);
}

OperatorMatrix OperatorMatrix::operator*(cplx s) const {
  return OperatorMatrix(lattice_, m_ * s);
}

double hermiticity_defect(const CMatrix& m) {
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  return (m - m.adjoint()).cwiseAbs().maxCoeff() / scale;
}

cplx trace_of(const OperatorMatrix& op) { return op.matrix().trace(); }

cplx expectation(const OperatorMatrix& op, const WaveFunction& psi) {
  if (op.kind() == OperatorKind::singular) {
    throw ValidationError("expectation: singular kernel is not an observable");
  }
  require_same_lattice(op.lattice(), psi.lattice(), "expectation");
  const CVector& a = psi.amplitudes();
  return a.dot(op.matrix() * a) * op.lattice().dq();
}

OperatorMatrix identity_operator(const Lattice& lattice) {
  const auto n = static_cast<Eigen::Index>(lattice.size());
  return OperatorMatrix(lattice, CMatrix::Identity(n, n),
                        OperatorKind::observable, true);
}

OperatorMatrix position_operator(const Lattice& lattice) {
  const auto n = static_cast<Eigen::Index>(lattice.size());
  CMatrix m = CMatrix::Zero(n, n);
  for (Eigen::Index a = 0; a < n; ++a) m(a, a) = lattice.q(static_cast<std::size_t>(a));
  return OperatorMatrix(lattice, std::move(m), OperatorKind::observable, true);
}

OperatorMatrix momentum_function(const Lattice& lattice,
                                 const Eigen::VectorXd& values_on_p_grid) {
  const std::size_t n = lattice.size();
  if (static_cast<std::size_t>(values_on_p_grid.size()) != n) {
    throw ValidationError("momentum_function: expected one value per lattice momentum");
  }
  // M_ab = (1/N) sum_k f(p_k) exp(i p_k (q_a - q_b)/hbar) depends on a - b only.
  std::vector<cplx> column(2 * n - 1);
  for (std::size_t d = 0; d < 2 * n - 1; ++d) {
    const double off = (static_cast<double>(d) - static_cast<double>(n - 1)) * lattice.dq();
    cplx s = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      s += values_on_p_grid[static_cast<Eigen::Index>(k)] *
           std::polar(1.0, lattice.p(k) * off / lattice.hbar());
    }
    column[d] = s / static_cast<double>(n);
  }
  const auto ni = static_cast<Eigen::Index>(n);
  CMatrix m(ni, ni);
  for (Eigen::Index a = 0; a < ni; ++a) {
    for (Eigen::Index b = 0; b < ni; ++b) m(a, b) = column[static_cast<std::size_t>(a - b + ni - 1)];
  }
  // Exact Hermitian symmetry; the sums above agree only to rounding.
  m = 0.5 * (m + m.adjoint()).eval();
  return OperatorMatrix(lattice, std::move(m), OperatorKind::observable, true);
}

OperatorMatrix momentum_operator(const Lattice& lattice) {
  Eigen::VectorXd p(static_cast<Eigen::Index>(lattice.size()));
  for (std::size_t k = 0; k < lattice.size(); ++k) p[static_cast<Eigen::Index>(k)] = lattice.p(k);
  return momentum_function(lattice, p);
}

PhaseSpaceDisplacement make_displacement(PhasePoint x0, PhasePoint v) {
  const double n = std::hypot(v.q, v.p);
  if (std::abs(n - 1.0) > 1e-12) {
    std::ostringstream os;
    os << "direction v must have unit norm, got " << n;
    throw ValidationError(os.str());
  }
  return {x0, v};
}

namespace {

void check_localized(const Lattice& lattice, PhasePoint x0, const char* who) {
  const double width = std::sqrt(lattice.hbar());
  if (width < 2.0 * lattice.dq()) {
    std::ostringstream os;
    os << who << ": width sqrt(hbar) = " << width << " is below 2 dq = "
       << 2.0 * lattice.dq();
    throw ValidationError(os.str());
  }
  const double margin = 5.0 * width;
  if (x0.q - lattice.q_min() < margin || lattice.q_max() - x0.q < margin) {
    std::ostringstream os;
    os << who << ": centre q0 = " << x0.q << " is closer than 5 sqrt(hbar) to the box edge";
    warn(os.str());
  }
}

}  // namespace

WaveFunction gaussian_state(const Lattice& lattice, PhasePoint x0) {
  return oscillator_state(lattice, 0, x0);
}

WaveFunction translate_state(const WaveFunction& psi, PhasePoint shift) {
  const Lattice& l = psi.lattice();
  const double hb = l.hbar();
  CVector mom = l.to_momentum(psi.amplitudes());
  for (std::size_t k = 0; k < l.size(); ++k) {
    mom[static_cast<Eigen::Index>(k)] *= std::polar(1.0, -shift.q * l.p(k) / hb);
  }
  CVector out = l.from_momentum(mom);
  for (std::size_t j = 0; j < l.size(); ++j) {
    out[static_cast<Eigen::Index>(j)] *= std::polar(1.0, shift.p * (l.q(j) - 0.5 * shift.q) / hb);
  }
  return WaveFunction(l, std::move(out));
}

WaveFunction oscillator_state(const Lattice& lattice, int n, PhasePoint x0) {
  if (n < 0) throw ValidationError("oscillator_state: level must be >= 0");
  check_localized(lattice, x0, "oscillator_state");
  const double hb = lattice.hbar();
  const double pre = std::pow(std::numbers::pi * hb, -0.25);
  CVector amp(static_cast<Eigen::Index>(lattice.size()));
  for (std::size_t j = 0; j < lattice.size(); ++j) {
    const double dx = lattice.q(j) - x0.q;
    const double xi = dx / std::sqrt(hb);
    // Normalized Hermite recurrence without the pi^{-1/4} e^{-xi^2/2} factor.
    double prev = 0.0;
    double cur = 1.0;
    for (int k = 0; k < n; ++k) {
      const double next = std::sqrt(2.0 / (k + 1)) * xi * cur -
                          std::sqrt(static_cast<double>(k) / (k + 1)) * prev;
      prev = cur;
      cur = next;
    }
    amp[static_cast<Eigen::Index>(j)] =
        pre * cur * std::exp(-0.5 * xi * xi) * std::polar(1.0, x0.p * dx / hb);
  }
  return WaveFunction(lattice, std::move(amp));
}

OperatorMatrix density_from_pure(const WaveFunction& psi) {
  const CVector& a = psi.amplitudes();
  CMatrix m = a * a.adjoint() * psi.lattice().dq();
  return OperatorMatrix(psi.lattice(), std::move(m), OperatorKind::density, true);
}

OperatorMatrix singular_density_rho0v(const Lattice& lattice,
                                      const PhaseSpaceDisplacement& disp) {
  const PhaseSpaceDisplacement d = make_displacement(disp.x0, disp.v);
  const auto m0 = lattice.half_index(d.x0.q);
  if (!m0) {
    std::ostringstream os;
    os << "singular_density_rho0v: q0 = " << d.x0.q << " is not on the half-grid";
    throw ValidationError(os.str());
  }
  const std::size_t m = *m0;
  if (m == 0 || m + 1 >= lattice.half_size()) {
    throw ValidationError("singular_density_rho0v: q0 needs neighbouring half-grid rows");
  }
  const std::size_t n = lattice.size();
  const double hb = lattice.hbar();
  const double p0 = d.x0.p;
  const auto ni = static_cast<Eigen::Index>(n);
  CMatrix out = CMatrix::Zero(ni, ni);
  // Quantizer rows: M_ab = exp(i p0 (q_a - q_b)/hbar) on a + b = row.
  auto add_row = [&](std::size_t row, auto weight) {
    const std::size_t a_lo = row >= n ? row - (n - 1) : 0;
    const std::size_t a_hi = std::min(row, n - 1);
    for (std::size_t a = a_lo; a <= a_hi; ++a) {
      const std::size_t b = row - a;
      const double off = lattice.q(a) - lattice.q(b);
      out(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) +=
          weight(off) * std::polar(1.0, p0 * off / hb);
    }
  };
  if (d.v.q != 0.0) {
    const double w = 2.0 * d.v.q / lattice.dq();
    add_row(m + 1, [w](double) { return cplx(w); });
    add_row(m - 1, [w](double) { return cplx(-w); });
  }
  if (d.v.p != 0.0) {
    const double w = 2.0 * d.v.p / hb;
    add_row(m, [w](double off) { return cplx(0.0, w * off); });
  }
  return OperatorMatrix(lattice, std::move(out), OperatorKind::singular, true);
}

}  // namespace moyal
