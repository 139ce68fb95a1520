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

#include <cmath>
#include <numbers>
#include <sstream>

#include <unsupported/Eigen/Polynomials>

#include "moyal/classical.hpp"
#include "moyal/diagnostics.hpp"

namespace moyal {

namespace {

using Index = Eigen::Index;

double potential_minimum(const HamiltonianSpec& spec) {
  const auto& c = spec.coefficients;
  double best = spec.potential(0.0);
  std::vector<double> dc;
  for (std::size_t k = 1; k < c.size(); ++k) dc.push_back(static_cast<double>(k) * c[k]);
  while (!dc.empty() && dc.back() == 0.0) dc.pop_back();
  if (dc.size() >= 2) {
    Eigen::VectorXd coeffs = Eigen::Map<Eigen::VectorXd>(dc.data(), static_cast<Index>(dc.size()));
    Eigen::PolynomialSolver<double, Eigen::Dynamic> solver;
    solver.compute(coeffs);
    std::vector<double> roots;
    solver.realRoots(roots, 1e-8);
    for (double r : roots) best = std::min(best, spec.potential(r));
  }
  return best;
}

double radial(const HamiltonianSpec& spec, double vmin, PhasePoint x) {
  if (spec.confining()) return std::sqrt(std::max(0.0, 2.0 * (spec.energy(x) - vmin)));
  return std::hypot(x.q, x.p);
}

}  // namespace

SpectralPropagator::SpectralPropagator(const OperatorMatrix& hamiltonian)
    : lattice_(hamiltonian.lattice()) {
  const CMatrix& h = hamiltonian.matrix();
  if (hermiticity_defect(h) > 1e-10) {
    throw ValidationError("SpectralPropagator: Hamiltonian is not Hermitian");
  }
  const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
  if (h.imag().cwiseAbs().maxCoeff() <= 1e-13 * scale) {
    Eigen::MatrixXd hr = h.real();
    hr = 0.5 * (hr + hr.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(hr);
    if (es.info() != Eigen::Success) throw NumericalError("eigensolver failed");
    energies_ = es.eigenvalues();
    real_vectors_ = es.eigenvectors();
    real_ = true;
  } else {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
    if (es.info() != Eigen::Success) throw NumericalError("eigensolver failed");
    energies_ = es.eigenvalues();
    complex_vectors_ = es.eigenvectors();
  }
}

CMatrix SpectralPropagator::vectors() const {
  return real_ ? real_vectors_.cast<cplx>() : complex_vectors_;
}

CMatrix SpectralPropagator::to_eigenbasis(const CMatrix& m) const {
  if (!real_) return complex_vectors_.adjoint() * m * complex_vectors_;
  const Eigen::MatrixXd& v = real_vectors_;
  const Eigen::MatrixXd re = v.transpose() * (m.real() * v);
  const Eigen::MatrixXd im = v.transpose() * (m.imag() * v);
  CMatrix out(re.rows(), re.cols());
  out.real() = re;
  out.imag() = im;
  return out;
}

CMatrix SpectralPropagator::from_eigenbasis(const CMatrix& m) const {
  if (!real_) return complex_vectors_ * m * complex_vectors_.adjoint();
  const Eigen::MatrixXd& v = real_vectors_;
  const Eigen::MatrixXd re = v * (m.real() * v.transpose());
  const Eigen::MatrixXd im = v * (m.imag() * v.transpose());
  CMatrix out(re.rows(), re.cols());
  out.real() = re;
  out.imag() = im;
  return out;
}

CVector SpectralPropagator::phases(double t) const {
  CVector u(energies_.size());
  const double hb = lattice_.hbar();
  for (Index k = 0; k < energies_.size(); ++k) u[k] = std::polar(1.0, energies_[k] * t / hb);
  return u;
}

OperatorMatrix SpectralPropagator::heisenberg(const OperatorMatrix& op, double t) const {
  require_same_lattice(lattice_, op.lattice(), "heisenberg");
  CMatrix a = to_eigenbasis(op.matrix());
  const CVector u = phases(t);
  // (D^+ A~ D)_kl = u_k A~_kl conj(u_l)
  a = u.asDiagonal() * a * u.conjugate().asDiagonal();
  CMatrix out = from_eigenbasis(a);
  if (op.hermitian()) out = 0.5 * (out + out.adjoint()).eval();
  return OperatorMatrix(lattice_, std::move(out), op.kind(), op.hermitian());
}

WaveFunction SpectralPropagator::evolve(const WaveFunction& psi, double t) const {
  require_same_lattice(lattice_, psi.lattice(), "evolve");
  const CVector u = phases(-t);
  CVector c;
  if (real_) {
    c = real_vectors_.transpose().cast<cplx>() * psi.amplitudes();
    c = u.asDiagonal() * c;
    return WaveFunction(lattice_, real_vectors_.cast<cplx>() * c);
  }
  c = complex_vectors_.adjoint() * psi.amplitudes();
  c = u.asDiagonal() * c;
  return WaveFunction(lattice_, complex_vectors_ * c);
}

OperatorMatrix heisenberg_observable(const OperatorMatrix& hamiltonian,
                                     const OperatorMatrix& op, double t) {
  return SpectralPropagator(hamiltonian).heisenberg(op, t);
}

TracePairing::TracePairing(const CMatrix& b_eigen, const CMatrix& a_eigen)
    : c_(b_eigen.transpose().cwiseProduct(a_eigen)) {}

cplx TracePairing::operator()(const CVector& u) const {
  return u.transpose() * (c_ * u.conjugate());
}

double window_coordinate(const HamiltonianSpec& spec, PhasePoint x) {
  return radial(spec, spec.confining() ? potential_minimum(spec) : 0.0, x);
}

PhaseSpaceFunction window_symbol(const Lattice& lattice, const HamiltonianSpec& spec,
                                 const CoordinateWindow& window) {
  if (!(window.width > 0.0) || !(window.radius > 0.0)) {
    throw ValidationError("window radius and width must be positive");
  }
  const double vmin = spec.confining() ? potential_minimum(spec) : 0.0;
  return sample_symbol(lattice, [&](double q, double p) {
    const double r = radial(spec, vmin, {q, p});
    return cplx(0.5 * std::erfc((r - window.radius) / window.width));
  });
}

void check_window_fits(const Lattice& lattice, const HamiltonianSpec& spec,
                       const CoordinateWindow& window) {
  const PhaseSpaceFunction g = window_symbol(lattice, spec, window);
  const double qc = 0.5 * (lattice.q_min() + lattice.q_max());
  const double q_lim = 0.8 * 0.5 * lattice.length();
  const double p_lim = 0.8 * lattice.symbol_p_limit();
  double worst = 0.0;
  for (std::size_t i = 0; i < g.n_q(); ++i) {
    const bool q_edge = std::abs(g.q(i) - qc) > q_lim;
    for (std::size_t j = 0; j < g.n_p(); ++j) {
      if (q_edge || std::abs(g.p(j)) > p_lim) worst = std::max(worst, std::abs(g(i, j)));
    }
  }
  if (worst > 1e-8) {
    std::ostringstream os;
    os << "coordinate window (radius " << window.radius << ", width " << window.width
       << ") does not fit the lattice: value " << worst
       << " near the edge; enlarge the box or n_points, or shrink the window";
    throw ValidationError(os.str());
  }
}

double plateau_radius(const CoordinateWindow& window) {
  return window.radius - 4.5 * window.width;
}

CoordinateWindow default_window(const Lattice& lattice, const HamiltonianSpec& spec,
                                const std::vector<PhasePoint>& readout) {
  double r0 = 0.0;
  for (const auto& x : readout) r0 = std::max(r0, window_coordinate(spec, x));
  const double s = std::sqrt(lattice.hbar());
  auto fits = [&](const CoordinateWindow& w) {
    try {
      check_window_fits(lattice, spec, w);
      return true;
    } catch (const ValidationError&) {
      return false;
    }
  };
  // Quadratic flows carry any symbol exactly, so narrower edges cost nothing.
  std::vector<double> factors{1.5, 1.25, 1.0};
  if (spec.quadratic()) factors.insert(factors.end(), {0.75, 0.5});
  for (double factor : factors) {
    const double width = factor * s;
    CoordinateWindow w{r0 + 5.0 * width, width};
    if (!fits(w)) continue;
    if (spec.confining()) return w;
    // Grow the plateau as far as the lattice allows.
    double step = 0.5 * lattice.length();
    while (step > 0.05 * width) {
      const CoordinateWindow bigger{w.radius + step, width};
      if (fits(bigger)) {
        w = bigger;
      } else {
        step *= 0.5;
      }
    }
    return w;
  }
  std::ostringstream os;
  os << "no coordinate window fits the lattice around readout radius " << r0
     << "; enlarge the box or n_points";
  throw ValidationError(os.str());
}

CoordinateObservables coordinate_observables(const Lattice& lattice,
                                             const HamiltonianSpec& spec,
                                             const CoordinateWindow& window) {
  check_window_fits(lattice, spec, window);
  const PhaseSpaceFunction g = window_symbol(lattice, spec, window);
  CMatrix qg = g.values();
  CMatrix pg = g.values();
  for (std::size_t i = 0; i < g.n_q(); ++i) {
    for (std::size_t j = 0; j < g.n_p(); ++j) {
      qg(static_cast<Index>(i), static_cast<Index>(j)) *= g.q(i);
      pg(static_cast<Index>(i), static_cast<Index>(j)) *= g.p(j);
    }
  }
  return {weyl_quantize(PhaseSpaceFunction(lattice, RowGrid::half, std::move(qg))),
          weyl_quantize(PhaseSpaceFunction(lattice, RowGrid::half, std::move(pg))), window};
}

QuantumDynamics::QuantumDynamics(const Lattice& lattice, const HamiltonianSpec& spec,
                                 const std::vector<PhasePoint>& readout,
                                 DynamicsOptions options)
    : lattice_(lattice),
      spec_(spec),
      hamiltonian_(build_hamiltonian(lattice, spec)),
      propagator_(std::make_shared<SpectralPropagator>(hamiltonian_)),
      coords_(coordinate_observables(
          lattice, spec,
          options.window ? *options.window : default_window(lattice, spec, readout))),
      options_(options) {
  q_eigen_ = propagator_->to_eigenbasis(coords_.q.matrix());
  p_eigen_ = propagator_->to_eigenbasis(coords_.p.matrix());
  // Hermitian observables: X X^+ = X^2, and ||X||_F^2 is basis independent.
  qq_eigen_ = q_eigen_ * q_eigen_;
  pp_eigen_ = p_eigen_ * p_eigen_;
  q_norm2_ = q_eigen_.squaredNorm();
  p_norm2_ = p_eigen_.squaredNorm();
}

PhasePoint QuantumDynamics::Pairing::at(const CVector& u) const {
  return {q(u).real(), p(u).real()};
}

QuantumDynamics::Pairing QuantumDynamics::pair_coordinates(const OperatorMatrix& b) const {
  require_same_lattice(lattice_, b.lattice(), "pair_coordinates");
  const CMatrix be = propagator_->to_eigenbasis(b.matrix());
  return {TracePairing(be, q_eigen_), TracePairing(be, p_eigen_)};
}

std::vector<PhasePoint> QuantumDynamics::symbols_at(PhasePoint x0,
                                                    const std::vector<double>& times) const {
  const Pairing pr = pair_coordinates(quantizer_matrix(lattice_, x0) * cplx(2.0));
  std::vector<PhasePoint> out;
  out.reserve(times.size());
  for (double t : times) out.push_back(pr.at(propagator_->phases(t)));
  return out;
}

EscapeScan QuantumDynamics::escape_scan(const std::vector<double>& times,
                                        const std::vector<PhasePoint>& readout) const {
  require_increasing(times, "escape_scan");
  if (readout.empty()) throw ValidationError("escape_scan: no readout points");
  const std::size_t n = lattice_.size();
  const std::size_t cells = std::min(options_.edge_cells, n / 4);
  double p_readout = 0.0;
  for (const auto& x : readout) p_readout = std::max(p_readout, std::abs(x.p));
  CMatrix strip = CMatrix::Zero(static_cast<Index>(n), static_cast<Index>(n));
  for (std::size_t a = 0; a < cells; ++a) {
    strip(static_cast<Index>(a), static_cast<Index>(a)) = 1.0;
    strip(static_cast<Index>(n - 1 - a), static_cast<Index>(n - 1 - a)) = 1.0;
  }
  const double band_half = 0.5 * static_cast<double>(n) * lattice_.dp();
  const double p_cut = band_half - p_readout - static_cast<double>(cells) * lattice_.dp();
  Eigen::VectorXd mask(static_cast<Index>(n));
  for (std::size_t k = 0; k < n; ++k) {
    mask[static_cast<Index>(k)] = std::abs(lattice_.p(k)) >= p_cut ? 1.0 : 0.0;
  }
  strip += momentum_function(lattice_, mask).matrix();
  const CMatrix se = propagator_->to_eigenbasis(strip);
  const TracePairing fq(se, qq_eigen_);
  const TracePairing fp(se, pp_eigen_);

  EscapeScan scan;
  scan.times = times;
  scan.threshold = options_.escape_threshold;
  scan.plateau = plateau_radius(coords_.window);
  scan.flow_radius.assign(times.size(), 0.0);
  const double vmin = spec_.confining() ? potential_minimum(spec_) : 0.0;
  for (const auto& x : readout) {
    std::vector<double> ts = times;
    if (ts.front() > 0.0) ts.insert(ts.begin(), 0.0);
    Trajectory tr;
    try {
      tr = classical_flow(spec_, x, ts);
    } catch (const NumericalError&) {
      scan.flow_radius.assign(times.size(), std::numeric_limits<double>::infinity());
      break;
    }
    const std::size_t off = ts.size() - times.size();
    for (std::size_t i = 0; i < times.size(); ++i) {
      scan.flow_radius[i] =
          std::max(scan.flow_radius[i], radial(spec_, vmin, tr.points[i + off]));
    }
  }
  bool ok = true;
  for (std::size_t i = 0; i < times.size(); ++i) {
    const CVector u = propagator_->phases(times[i]);
    const double f =
        std::sqrt(std::max(std::abs(fq(u)) / q_norm2_, std::abs(fp(u)) / p_norm2_));
    scan.edge_fraction.push_back(f);
    if (ok && f <= scan.threshold && scan.flow_radius[i] <= scan.plateau) {
      scan.max_usable_time = times[i];
    } else {
      ok = false;
      scan.escaped = true;
    }
  }
  return scan;
}

void QuantumDynamics::require_no_escape(const std::vector<double>& times,
                                        const std::vector<PhasePoint>& readout) const {
  const EscapeScan scan = escape_scan(times, readout);
  if (scan.escaped) {
    std::ostringstream os;
    os << "evolved coordinates leave the resolved region (edge fraction above "
       << scan.threshold << " or flow outside the window plateau); max usable t = "
       << scan.max_usable_time;
    throw EscapeError(os.str(), scan.max_usable_time);
  }
}

Trajectory quantum_trajectory(const QuantumDynamics& dyn, PhasePoint x0,
                              const std::vector<double>& times) {
  require_increasing(times, "quantum_trajectory");
  dyn.require_no_escape(times, {x0});
  Trajectory tr;
  tr.times = times;
  tr.points = dyn.symbols_at(x0, times);
  tr.provenance = Provenance::quantum;
  tr.hbar = dyn.hbar();
  return tr;
}

std::vector<double> smeared_mean(const QuantumDynamics& dyn, const PhaseSpaceFunction& a,
                                 PhasePoint x0, double epsilon,
                                 const std::vector<double>& times) {
  const Lattice& l = dyn.lattice();
  require_same_lattice(l, a.lattice(), "smeared_mean");
  if (!(epsilon >= 0.0)) throw ValidationError("smeared_mean: epsilon must be >= 0");
  OperatorMatrix b = identity_operator(l);
  if (epsilon == 0.0) {
    b = quantizer_matrix(l, x0) * cplx(2.0);
  } else {
    if (std::sqrt(epsilon) < 2.0 * l.dq()) {
      throw ValidationError("smeared_mean: sqrt(epsilon) is below 2 dq");
    }
    // Operator whose symbol is h W_eps, so Tr[B A] = integral W_eps A dx.
    const double c = l.h() / (std::numbers::pi * epsilon);
    b = weyl_quantize(sample_symbol(l, [&](double q, double p) {
      const double r2 = (q - x0.q) * (q - x0.q) + (p - x0.p) * (p - x0.p);
      return cplx(c * std::exp(-r2 / epsilon));
    }));
  }
  const SpectralPropagator& prop = dyn.propagator();
  const OperatorMatrix a_op = weyl_quantize(a);
  const TracePairing pairing(prop.to_eigenbasis(b.matrix()), prop.to_eigenbasis(a_op.matrix()));
  std::vector<double> out;
  out.reserve(times.size());
  for (double t : times) out.push_back(pairing(prop.phases(t)).real());
  return out;
}

std::vector<double> egorov_residual(const HamiltonianSpec& spec, PhasePoint x0, double t,
                                    const std::vector<Lattice>& lattices,
                                    DynamicsOptions options) {
  if (lattices.empty()) throw ValidationError("egorov_residual: empty hbar sequence");
  if (!(t >= 0.0)) throw ValidationError("egorov_residual: t must be >= 0");
  const std::vector<double> times = t > 0.0 ? std::vector<double>{0.0, t} : std::vector<double>{0.0};
  const Trajectory cl = classical_flow(spec, x0, times);
  const PhasePoint ref = cl.points.back();
  std::vector<double> out;
  for (const Lattice& l : lattices) {
    const QuantumDynamics dyn(l, spec, {x0, ref}, options);
    const Trajectory qt = quantum_trajectory(dyn, x0, times);
    const PhasePoint x = qt.points.back();
    out.push_back(std::hypot(x.q - ref.q, x.p - ref.p));
  }
  return out;
}

}  // namespace moyal
