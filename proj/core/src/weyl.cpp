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

#include "moyal/weyl.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "fft.hpp"
#include "moyal/diagnostics.hpp"

namespace moyal {

namespace {

using Index = Eigen::Index;

// i^{-d} for integer d.
cplx inv_i_power(long d) {
  switch (((d % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, -1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, 1.0};
  }
}

struct RowPairs {
  std::size_t a_lo;
  std::size_t a_hi;
};

// Pairs (a, m - a) of lattice indices whose midpoint is half-grid row m.
RowPairs row_pairs(std::size_t m, std::size_t n) {
  return {m >= n ? m - (n - 1) : 0, std::min(m, n - 1)};
}

std::size_t wrap(long e, std::size_t n) {
  const long ni = static_cast<long>(n);
  return static_cast<std::size_t>(((e % ni) + ni) % ni);
}

}  // namespace

PhaseSpaceFunction::PhaseSpaceFunction(Lattice lattice, RowGrid rows, CMatrix values,
                                       bool is_wigner)
    : lattice_(std::move(lattice)), rows_(rows), v_(std::move(values)), is_wigner_(is_wigner) {
  const std::size_t nq = rows_ == RowGrid::half ? lattice_.half_size() : lattice_.size();
  if (static_cast<std::size_t>(v_.rows()) != nq ||
      static_cast<std::size_t>(v_.cols()) != lattice_.symbol_p_size()) {
    std::ostringstream os;
    os << "PhaseSpaceFunction: expected " << nq << " x " << lattice_.symbol_p_size()
       << " samples, got " << v_.rows() << " x " << v_.cols();
    throw ValidationError(os.str());
  }
}

double PhaseSpaceFunction::q(std::size_t i) const {
  return rows_ == RowGrid::half ? lattice_.half_q(i) : lattice_.q(i);
}

double PhaseSpaceFunction::dq() const {
  return rows_ == RowGrid::half ? 0.5 * lattice_.dq() : lattice_.dq();
}

PhaseSpaceFunction sample_symbol(const Lattice& lattice, const PhaseSpaceSampler& f,
                                 RowGrid rows) {
  const std::size_t nq = rows == RowGrid::half ? lattice.half_size() : lattice.size();
  const std::size_t np = lattice.symbol_p_size();
  CMatrix v(static_cast<Index>(nq), static_cast<Index>(np));
  for (std::size_t i = 0; i < nq; ++i) {
    const double q = rows == RowGrid::half ? lattice.half_q(i) : lattice.q(i);
    for (std::size_t j = 0; j < np; ++j) {
      v(static_cast<Index>(i), static_cast<Index>(j)) = f(q, lattice.symbol_p(j));
    }
  }
  return PhaseSpaceFunction(lattice, rows, std::move(v));
}

PhaseSpaceFunction to_half_grid(const PhaseSpaceFunction& a) {
  if (a.rows() == RowGrid::half) return a;
  const Lattice& l = a.lattice();
  const std::size_t n = l.size();
  detail::Fft fft;
  CMatrix out(static_cast<Index>(l.half_size()), a.values().cols());
  std::vector<cplx> col(n), spec, padded(2 * n, cplx(0.0)), fine;
  for (Index j = 0; j < a.values().cols(); ++j) {
    for (std::size_t i = 0; i < n; ++i) col[i] = a.values()(static_cast<Index>(i), j);
    fft.forward(spec, col);
    std::fill(padded.begin(), padded.end(), cplx(0.0));
    for (std::size_t k = 0; k < n / 2; ++k) padded[k] = spec[k];
    for (std::size_t k = n / 2 + 1; k < n; ++k) padded[k + n] = spec[k];
    // Split the Nyquist bin symmetrically.
    padded[n / 2] = 0.5 * spec[n / 2];
    padded[n / 2 + n] = 0.5 * spec[n / 2];
    fft.backward(fine, padded);
    for (std::size_t m = 0; m < l.half_size(); ++m) {
      out(static_cast<Index>(m), j) = fine[m] / static_cast<double>(n);
    }
  }
  return PhaseSpaceFunction(l, RowGrid::half, std::move(out), a.is_wigner());
}

PhaseSpaceFunction to_main_grid(const PhaseSpaceFunction& a) {
  if (a.rows() == RowGrid::main) return a;
  const Lattice& l = a.lattice();
  CMatrix out(static_cast<Index>(l.size()), a.values().cols());
  for (std::size_t i = 0; i < l.size(); ++i) {
    out.row(static_cast<Index>(i)) = a.values().row(static_cast<Index>(2 * i));
  }
  return PhaseSpaceFunction(l, RowGrid::main, std::move(out), a.is_wigner());
}

PhaseSpaceFunction weyl_dequantize(const OperatorMatrix& op) {
  const Lattice& l = op.lattice();
  const std::size_t n = l.size();
  const CMatrix& mat = op.matrix();
  detail::Fft fft;
  CMatrix out(static_cast<Index>(l.half_size()), static_cast<Index>(n));
  std::vector<cplx> y(n), big_y;
  for (std::size_t m = 0; m < l.half_size(); ++m) {
    const long r = static_cast<long>(m % 2);
    std::fill(y.begin(), y.end(), cplx(0.0));
    const RowPairs rp = row_pairs(m, n);
    for (std::size_t a = rp.a_lo; a <= rp.a_hi; ++a) {
      const std::size_t b = m - a;
      const long d = static_cast<long>(b) - static_cast<long>(a);
      y[wrap((d - r) / 2, n)] +=
          inv_i_power(d) * mat(static_cast<Index>(a), static_cast<Index>(b));
    }
    fft.backward(big_y, y);
    for (std::size_t j = 0; j < n; ++j) {
      const double ph = std::numbers::pi * static_cast<double>(j * r) / static_cast<double>(n);
      out(static_cast<Index>(m), static_cast<Index>(j)) = 2.0 * std::polar(1.0, ph) * big_y[j];
    }
  }
  return PhaseSpaceFunction(l, RowGrid::half, std::move(out));
}

OperatorMatrix weyl_quantize(const PhaseSpaceFunction& sym) {
  const PhaseSpaceFunction a = to_half_grid(sym);
  const Lattice& l = a.lattice();
  const std::size_t n = l.size();
  detail::Fft fft;
  CMatrix mat = CMatrix::Zero(static_cast<Index>(n), static_cast<Index>(n));
  std::vector<cplx> z(n), y;
  for (std::size_t m = 0; m < l.half_size(); ++m) {
    const long r = static_cast<long>(m % 2);
    for (std::size_t j = 0; j < n; ++j) {
      const double ph = -std::numbers::pi * static_cast<double>(j * r) / static_cast<double>(n);
      z[j] = 0.5 * std::polar(1.0, ph) * a.values()(static_cast<Index>(m), static_cast<Index>(j));
    }
    fft.forward(y, z);
    const RowPairs rp = row_pairs(m, n);
    for (std::size_t a_idx = rp.a_lo; a_idx <= rp.a_hi; ++a_idx) {
      const std::size_t b = m - a_idx;
      const long d = static_cast<long>(b) - static_cast<long>(a_idx);
      mat(static_cast<Index>(a_idx), static_cast<Index>(b)) =
          std::conj(inv_i_power(d)) * y[wrap((d - r) / 2, n)] / static_cast<double>(n);
    }
  }
  const bool real_symbol = a.imag_residue() == 0.0;
  if (real_symbol) mat = 0.5 * (mat + mat.adjoint()).eval();
  return OperatorMatrix(l, std::move(mat), OperatorKind::observable, real_symbol);
}

PhaseSpaceFunction wigner_transform(const OperatorMatrix& rho) {
  if (rho.kind() == OperatorKind::singular) {
    throw ValidationError("wigner_transform: singular kernel is not a density");
  }
  PhaseSpaceFunction s = weyl_dequantize(rho);
  CMatrix w = s.values() / rho.lattice().h();
  return PhaseSpaceFunction(rho.lattice(), RowGrid::half, std::move(w), true);
}

PhaseSpaceFunction wigner_of(const WaveFunction& psi) {
  return wigner_transform(density_from_pure(psi));
}

OperatorMatrix quantizer_matrix(const Lattice& lattice, PhasePoint x) {
  const auto m = lattice.half_index(x.q);
  if (!m) {
    std::ostringstream os;
    os << "quantizer_matrix: q = " << x.q << " is not on the half-grid";
    throw ValidationError(os.str());
  }
  const std::size_t n = lattice.size();
  CMatrix mat = CMatrix::Zero(static_cast<Index>(n), static_cast<Index>(n));
  const RowPairs rp = row_pairs(*m, n);
  for (std::size_t a = rp.a_lo; a <= rp.a_hi; ++a) {
    const std::size_t b = *m - a;
    mat(static_cast<Index>(a), static_cast<Index>(b)) =
        std::polar(1.0, x.p * (lattice.q(a) - lattice.q(b)) / lattice.hbar());
  }
  return OperatorMatrix(lattice, std::move(mat), OperatorKind::observable, true);
}

PhaseSpaceFunction star_product(const PhaseSpaceFunction& a, const PhaseSpaceFunction& b) {
  require_same_lattice(a.lattice(), b.lattice(), "star_product");
  return weyl_dequantize(weyl_quantize(a) * weyl_quantize(b));
}

cplx phase_space_integral(const PhaseSpaceFunction& a) {
  const Index stride = a.rows() == RowGrid::half ? 2 : 1;
  cplx s = 0.0;
  for (Index i = 0; i < a.values().rows(); i += stride) s += a.values().row(i).sum();
  return s * a.lattice().dq() * a.lattice().symbol_dp();
}

cplx trace_via_symbol(const PhaseSpaceFunction& a) {
  return phase_space_integral(a) / a.lattice().h();
}

cplx phase_space_inner(const PhaseSpaceFunction& a, const PhaseSpaceFunction& b) {
  require_same_lattice(a.lattice(), b.lattice(), "phase_space_inner");
  if (a.rows() != b.rows()) {
    throw ValidationError("phase_space_inner: operands use different row grids");
  }
  return a.values().cwiseProduct(b.values()).sum() * a.dq() * a.dp();
}

cplx trace_of_product_via_symbols(const PhaseSpaceFunction& a,
                                  const PhaseSpaceFunction& b) {
  if (a.rows() != RowGrid::half || b.rows() != RowGrid::half) {
    throw ValidationError("trace_of_product_via_symbols: half-grid symbols required");
  }
  return phase_space_inner(a, b) / a.lattice().h();
}

RoyerWeights royer_expansion(const WaveFunction& psi, PhasePoint x) {
  const OperatorMatrix delta = quantizer_matrix(psi.lattice(), x);
  const CVector& v = psi.amplitudes();
  const CVector dv = delta.apply(v);
  const double dq = psi.lattice().dq();
  RoyerWeights w;
  w.plus_weight = 0.25 * (v + dv).squaredNorm() * dq;
  w.minus_weight = 0.25 * (v - dv).squaredNorm() * dq;
  return w;
}

Eigen::VectorXd position_marginal(const PhaseSpaceFunction& w) {
  const PhaseSpaceFunction m = to_main_grid(w);
  return m.values().real().rowwise().sum() * w.dp();
}

Eigen::VectorXd momentum_marginal(const PhaseSpaceFunction& w) {
  return w.values().real().colwise().sum().transpose() * w.dq();
}

}  // namespace moyal
