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

#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <ostream>
#include <string>
#include <vector>

#include "commands.hpp"
#include "moyal/classical.hpp"
#include "moyal/diagnostics.hpp"
#include "moyal/dynamics.hpp"
#include "moyal/hamiltonian.hpp"
#include "moyal/lyapunov.hpp"
#include "moyal/tomography.hpp"
#include "moyal/weyl.hpp"

namespace moyal::cli {
namespace {

constexpr double kPi = std::numbers::pi;

struct Row {
  std::string status;
  std::string name;
  double measured;
  double tolerance;
};

class Table {
 public:
  void check(const std::string& name, double measured, double tol) {
    const bool ok = std::isfinite(measured) && measured <= tol;
    pass_ = pass_ && ok;
    rows_.push_back({ok ? "PASS" : "FAIL", name, measured, tol});
  }
  void info(const std::string& name, double measured) {
    rows_.push_back({"INFO", name, measured, std::nan("")});
  }
  // Runs body, turning an exception into a failed row.
  void guard(const std::string& name, const std::function<void()>& body) {
    try {
      body();
    } catch (const std::exception& e) {
      pass_ = false;
      rows_.push_back({"FAIL", name + " (" + e.what() + ")", std::nan(""), std::nan("")});
    }
  }
  bool pass() const { return pass_; }
  void print(std::ostream& out) const {
    char buf[256];
    std::snprintf(buf, sizeof buf, "%-6s %-58s %12s %10s\n", "status", "check", "measured", "tol");
    out << buf;
    for (const Row& r : rows_) {
      const std::string tol = std::isnan(r.tolerance) ? "-" : fmt(r.tolerance, "%.0e");
      std::snprintf(buf, sizeof buf, "%-6s %-58s %12s %10s\n", r.status.c_str(), r.name.c_str(),
                    fmt(r.measured, "%.3e").c_str(), tol.c_str());
      out << buf;
    }
  }

 private:
  static std::string fmt(double x, const char* f) {
    if (std::isnan(x)) return "-";
    char buf[32];
    std::snprintf(buf, sizeof buf, f, x);
    return buf;
  }
  std::vector<Row> rows_;
  bool pass_ = true;
};

double max_abs(const CMatrix& m) { return m.cwiseAbs().maxCoeff(); }

// Two displaced Gaussians superposed: smooth, localized, not an eigenstate.
CVector probe(const Lattice& l, PhasePoint c) {
  const CVector a = gaussian_state(l, c).amplitudes();
  const CVector b = gaussian_state(l, {c.q + 0.4, c.p - 0.3}).amplitudes();
  return WaveFunction(l, a + cplx(0.3, 0.2) * b).normalized().amplitudes();
}

// <phi|A|psi> with the lattice measure.
cplx braket(const Lattice& l, const CVector& phi, const CVector& psi) { return phi.dot(psi) * l.dq(); }

// T(y) = exp(2i (y_q p - y_p q)/hbar), a phase-space shift by -2y.
CVector shift_t(const Lattice& l, const CVector& psi, PhasePoint y) {
  return translate_state(WaveFunction(l, psi), {-2.0 * y.q, -2.0 * y.p}).amplitudes();
}

void quantizer_suite(Table& t) {
  const Lattice l = make_lattice(128, -10.0, 10.0, 1.0);
  const std::size_t n = l.size();
  const double hbar = l.hbar();
  // Half-grid base points near the origin.
  const std::vector<PhasePoint> xs{{0.0, 0.0}, {0.625, -0.4}, {-1.25, 0.9}, {1.875, 1.3}};

  t.guard("P1", [&] {
    double herm = 0.0, inv = 0.0, unit = 0.0;
    for (const PhasePoint& x : xs) {
      const OperatorMatrix d = quantizer_matrix(l, x);
      herm = std::max(herm, hermiticity_defect(d.matrix()));
      const CVector psi = probe(l, x);
      const CVector dpsi = d.apply(psi);
      inv = std::max(inv, (d.apply(dpsi) - psi).norm() * std::sqrt(l.dq()));
      unit = std::max(unit, std::abs(dpsi.norm() - psi.norm()) * std::sqrt(l.dq()));
    }
    t.check("P1 quantizer Hermitian", herm, 1e-12);
    t.check("P1 quantizer involutive on localized states", inv, 1e-8);
    t.check("P1 quantizer norm preserving", unit, 1e-8);
  });
  t.guard("P2", [&] {
    double literal = 0.0, cell = 0.0;
    for (std::size_t m = 0; m + 1 < l.half_size(); ++m) {
      const cplx a = trace_of(quantizer_matrix(l, {l.half_q(m), 0.3}));
      const cplx b = trace_of(quantizer_matrix(l, {l.half_q(m + 1), 0.3}));
      literal = std::max(literal, std::abs(a - 0.5));
      cell = std::max(cell, std::abs(0.5 * (a + b) - 0.5));
    }
    t.check("P2 Tr quantizer = 1/2, averaged over a cell", cell, 1e-8);
    t.info("P2 Tr quantizer = 1/2 pointwise (integer on a lattice)", literal);
  });
  t.guard("P3", [&] {
    const double diag = 0.5 * kPi * hbar / (0.25 * l.dq() * l.dp());
    const std::vector<std::size_t> ps{n / 2, n / 2 + 1, n / 2 + 7};
    double centre = 0.0, other = 0.0, cross = 0.0;
    for (std::size_t m : {n - 1, n / 2}) {
      for (std::size_t j : ps) {
        const OperatorMatrix a = quantizer_matrix(l, {l.half_q(m), l.symbol_p(j)});
        for (std::size_t k : ps) {
          const OperatorMatrix b = quantizer_matrix(l, {l.half_q(m), l.symbol_p(k)});
          double& slot = m == n - 1 ? centre : other;
          slot = std::max(slot, std::abs(trace_of(a * b) - (j == k ? diag : 0.0)));
        }
        const OperatorMatrix c = quantizer_matrix(l, {l.half_q(m + 1), l.symbol_p(j)});
        cross = std::max(cross, std::abs(trace_of(a * c)));
      }
    }
    t.check("P3 Tr[quantizer pair] = delta / cell, centre row", centre, 1e-8);
    t.check("P3 Tr[quantizer pair] = 0 across rows", cross, 1e-8);
    t.info("P3 same, off-centre rows (truncated reflection range)", other);
  });
  t.guard("P4", [&] {
    // Trapezoid sum of e^{2i x.Jy/hbar} <phi|T(y)|psi> d*y over |y| <= 4.
    const int n_y = 121;
    const double extent = 4.0, h = 2.0 * extent / (n_y - 1);
    double worst = 0.0;
    for (const PhasePoint& x : {xs[0], xs[1]}) {
      const CVector phi = probe(l, {x.q + 0.3, x.p + 0.2});
      const CVector psi = probe(l, {x.q - 0.2, x.p - 0.1});
      cplx sum = 0.0;
      for (int i = 0; i < n_y; ++i) {
        for (int j = 0; j < n_y; ++j) {
          const PhasePoint y{-extent + i * h, -extent + j * h};
          const double w = (i == 0 || i == n_y - 1 ? 0.5 : 1.0) * (j == 0 || j == n_y - 1 ? 0.5 : 1.0);
          sum += w * std::polar(1.0, 2.0 * (x.q * y.p - x.p * y.q) / hbar) *
                 braket(l, phi, shift_t(l, psi, y));
        }
      }
      sum *= h * h / (kPi * hbar);
      worst = std::max(worst, std::abs(sum - braket(l, phi, quantizer_matrix(l, x).apply(psi))));
    }
    t.check("P4 quantizer as Weyl transform of translations", worst, 1e-6);
  });
  t.guard("P5", [&] {
    const WaveFunction psi(l, probe(l, {0.3, -0.4}));
    const PhaseSpaceFunction rho = weyl_dequantize(density_from_pure(psi));
    double worst = 0.0;
    for (std::size_t m : {n - 1, n + 4, n - 9}) {
      for (std::size_t j : {n / 2, n / 2 + 3, n / 2 - 5}) {
        const PhasePoint x{l.half_q(m), l.symbol_p(j)};
        const cplx lhs = 2.0 * braket(l, psi.amplitudes(), quantizer_matrix(l, x).apply(psi.amplitudes()));
        worst = std::max(worst, std::abs(lhs - rho(m, j)));
      }
    }
    t.check("P5 symbol = 2 Tr[quantizer rho]", worst, 1e-8);
  });
  t.guard("P6", [&] {
    const OperatorMatrix d0 = quantizer_matrix(l, {0.0, 0.0});
    const OperatorMatrix q = position_operator(l);
    const OperatorMatrix p = momentum_operator(l);
    double worst = 0.0;
    for (const PhasePoint& x : xs) {
      const CVector psi = probe(l, x);
      worst = std::max(worst, ((d0 * q * d0).apply(psi) + q.apply(psi)).norm() * std::sqrt(l.dq()));
      worst = std::max(worst, ((d0 * p * d0).apply(psi) + p.apply(psi)).norm() * std::sqrt(l.dq()));
    }
    t.check("P6 parity reflects q and p", worst, 1e-8);
  });
  t.guard("P7", [&] {
    const OperatorMatrix d0 = quantizer_matrix(l, {0.0, 0.0});
    double worst = 0.0;
    for (const PhasePoint& x : xs) {
      const CVector phi = probe(l, {x.q + 0.3, x.p + 0.2});
      const CVector psi = probe(l, {x.q - 0.2, x.p - 0.1});
      const PhasePoint half{0.5 * x.q, 0.5 * x.p};
      const cplx built = braket(l, shift_t(l, phi, half), d0.apply(shift_t(l, psi, half)));
      worst = std::max(worst, std::abs(built - braket(l, phi, quantizer_matrix(l, x).apply(psi))));
    }
    t.check("P7 quantizer = translated parity", worst, 1e-6);
  });
  t.guard("P8", [&] {
    const auto size = static_cast<Eigen::Index>(n);
    CMatrix sum = CMatrix::Zero(size, size);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t j = 0; j < n; ++j) sum += quantizer_matrix(l, {l.q(a), l.symbol_p(j)}).matrix();
    }
    sum *= l.dq() * l.symbol_dp() / (kPi * hbar);
    t.check("P8 quantizers resolve the identity", max_abs(sum - CMatrix::Identity(size, size)), 1e-8);
  });
}

void module_suite(Table& t) {
  const Lattice l = make_lattice(128, -10.0, 10.0, 1.0);

  t.guard("lattice", [&] {
    const CVector psi = probe(l, {0.5, 0.5});
    t.check("lattice Fourier round trip", (l.from_momentum(l.to_momentum(psi)) - psi).cwiseAbs().maxCoeff(),
            1e-12);
  });
  t.guard("wigner", [&] {
    const PhaseSpaceFunction g = wigner_of(gaussian_state(l, {}));
    t.check("wigner ground state peak = 1/pi", std::abs(g.values().real().maxCoeff() - 1.0 / kPi), 1e-10);
    const PhaseSpaceFunction w = wigner_of(oscillator_state(l, 3, {0.5, -0.5}));
    t.check("wigner normalization", std::abs(phase_space_integral(w) - 1.0), 1e-10);
    t.check("wigner bound |W| <= 1/(pi hbar)",
            std::max(0.0, w.values().cwiseAbs().maxCoeff() - 1.0 / kPi), 1e-6 / kPi);
    const WaveFunction psi = oscillator_state(l, 3, {0.5, -0.5});
    const Eigen::VectorXd pos = position_marginal(w);
    double err = 0.0;
    for (std::size_t a = 0; a < l.size(); ++a) err = std::max(err, std::abs(pos[static_cast<Eigen::Index>(a)] - std::norm(psi[a])));
    t.check("wigner position marginal", err, 1e-6);
  });
  t.guard("weyl", [&] {
    const PhaseSpaceFunction a = sample_symbol(l, [](double q, double p) {
      return cplx(std::exp(-0.5 * (q - 0.5) * (q - 0.5) - 0.3 * p * p));
    });
    const PhaseSpaceFunction b = sample_symbol(l, [](double q, double p) {
      return cplx(std::exp(-0.4 * q * q - 0.5 * (p + 0.5) * (p + 0.5)));
    });
    t.check("weyl dequantize(quantize(A)) = A",
            max_abs(weyl_dequantize(weyl_quantize(a)).values() - a.values()), 1e-8);
    const cplx tr = trace_of(weyl_quantize(a) * weyl_quantize(b));
    t.check("weyl Tr[AB] = phase-space pairing", std::abs(tr - trace_of_product_via_symbols(a, b)), 1e-8);
    t.check("weyl Tr[AB] = integral of A star B",
            std::abs(tr - trace_via_symbol(star_product(a, b))), 1e-8);
  });
  t.guard("dynamics", [&] {
    const Lattice dl = make_lattice(256, -12.8, 12.8, 1.0);
    const PhasePoint x0{1.5, -0.5};
    const QuantumDynamics dyn(dl, make_hamiltonian_spec("harmonic"), {x0});
    const WaveFunction out = dyn.propagator().evolve(gaussian_state(dl, x0), 2.3);
    t.check("dynamics propagator unitary", std::abs(out.norm() - 1.0), 1e-10);
    const std::vector<double> times{0.0, 1.0, 2.0, 3.0};
    const Trajectory tr = quantum_trajectory(dyn, x0, times);
    double err = 0.0;
    for (std::size_t k = 0; k < times.size(); ++k) {
      const double c = std::cos(times[k]), s = std::sin(times[k]);
      err = std::max(err, std::hypot(tr.points[k].q - (x0.q * c + x0.p * s),
                                     tr.points[k].p - (x0.p * c - x0.q * s)));
    }
    t.check("dynamics harmonic symbols follow the rotation", err, 1e-6);
  });
  t.guard("classical", [&] {
    const LyapunovEstimate e =
        classical_lyapunov(make_hamiltonian_spec("inverted"), {0.0, 0.0}, {1.0, 0.0}, 10.0);
    t.check("classical inverted-oscillator exponent = 1", std::abs(e.value - 1.0), 1e-3);
  });
  t.guard("lyapunov", [&] {
    std::vector<std::pair<double, double>> exp_s, pow_s, flat_s;
    for (double x : linspace(0.0, 10.0, 201)) {
      exp_s.emplace_back(x, std::exp(x));
      pow_s.emplace_back(x, x * x);
      flat_s.emplace_back(x, 1.0);
    }
    const FitWindow w{2.0, 8.0};
    const auto e = finite_time_exponent(exp_s, w);
    const auto p = finite_time_exponent(pow_s, w);
    const auto c = finite_time_exponent(flat_s, w);
    t.check("lyapunov e^t slope", std::abs(e.value - 1.0), 1e-6);
    const bool classes = e.growth_class == GrowthClass::exponential &&
                         p.growth_class == GrowthClass::polynomial &&
                         c.growth_class == GrowthClass::bounded;
    t.check("lyapunov growth classes (misclassified count)", classes ? 0.0 : 1.0, 0.0);
  });
  t.guard("tomography", [&] {
    const Lattice tl = make_lattice(128, -8.0, 8.0, 1.0);
    const PhaseSpaceFunction w = wigner_of(gaussian_state(tl, {0.5, -0.5}));
    const Tomogram tom = radon_transform(w, 128);
    t.check("tomography tomogram nonnegative", std::max(0.0, -tom.values.minCoeff()), 1e-9);
    const PhaseSpaceFunction rec = inverse_radon(tom);
    t.check("tomography round trip (relative L2)",
            (rec.values() - w.values()).norm() / w.values().norm(), 1e-3);
  });
}

}  // namespace

bool cmd_selfcheck(std::ostream& out) {
  Table t;
  quantizer_suite(t);
  module_suite(t);
  t.print(out);
  out << (t.pass() ? "selfcheck: all checks passed\n" : "selfcheck: FAILED\n");
  return t.pass();
}

}  // namespace moyal::cli
