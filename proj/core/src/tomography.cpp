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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "moyal/diagnostics.hpp"

namespace moyal {

namespace {

using Index = Eigen::Index;
constexpr double kPi = std::numbers::pi;
constexpr std::size_t kMinAngles = 64;

struct Support {
  Index r0 = 0, r1 = 0, c0 = 0, c1 = 0;  // half-open
};

// Bounding box of the samples above a relative floor; the rest contribute
// nothing measurable to the transforms.
Support support_of(const Eigen::MatrixXd& w) {
  const double floor = 1e-18 * w.cwiseAbs().maxCoeff();
  Support s{w.rows(), 0, w.cols(), 0};
  for (Index i = 0; i < w.rows(); ++i) {
    for (Index j = 0; j < w.cols(); ++j) {
      if (std::abs(w(i, j)) > floor) {
        s.r0 = std::min(s.r0, i);
        s.r1 = std::max(s.r1, i + 1);
        s.c0 = std::min(s.c0, j);
        s.c1 = std::max(s.c1, j + 1);
      }
    }
  }
  if (s.r1 <= s.r0) s = {0, 0, 0, 0};
  return s;
}

// Periodic trapezoid weights on [0, pi): the projections satisfy
// R(Q, theta + pi) = R(-Q, theta).
std::vector<double> angle_weights(const std::vector<double>& th) {
  const std::size_t n = th.size();
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double prev = i == 0 ? th[n - 1] - kPi : th[i - 1];
    const double next = i + 1 == n ? th[0] + kPi : th[i + 1];
    w[i] = 0.5 * (next - prev);
  }
  return w;
}

void check_angles(const std::vector<double>& th, const char* where) {
  if (th.empty()) throw ValidationError(std::string(where) + ": no angles");
  for (std::size_t i = 0; i < th.size(); ++i) {
    if (!(th[i] >= 0.0 && th[i] < kPi)) {
      throw ValidationError(std::string(where) + ": angles must lie in [0, pi)");
    }
    if (i > 0 && !(th[i] > th[i - 1])) {
      throw ValidationError(std::string(where) + ": angles must be strictly ascending");
    }
  }
}

}  // namespace

double Tomogram::slice_integral(std::size_t i) const {
  return values.row(static_cast<Index>(i)).sum() * q_step;
}

void Tomogram::validate() const {
  check_angles(thetas, "Tomogram");
  if (static_cast<std::size_t>(values.rows()) != thetas.size()) {
    throw ValidationError("Tomogram: one row of values per angle required");
  }
  if (values.cols() < 2 || !(q_step > 0.0)) {
    throw ValidationError("Tomogram: Q grid needs at least 2 points and a positive step");
  }
  if (!values.allFinite()) throw ValidationError("Tomogram: non-finite values");
}

double tomogram_q_extent(const Lattice& lattice) {
  const double qe = std::max(std::abs(lattice.q_min()), std::abs(lattice.q_max()));
  return std::hypot(qe, lattice.symbol_p_limit());
}

std::vector<double> uniform_angles(std::size_t n_angles) {
  std::vector<double> th(n_angles);
  for (std::size_t i = 0; i < n_angles; ++i) {
    th[i] = kPi * static_cast<double>(i) / static_cast<double>(n_angles);
  }
  return th;
}

Tomogram radon_transform(const PhaseSpaceFunction& w, std::size_t n_angles, std::size_t n_q) {
  if (n_angles == 0) throw ValidationError("radon_transform: n_angles must be positive");
  if (n_q == 0) n_q = w.lattice().size();
  if (n_q < 2) throw ValidationError("radon_transform: n_q must be at least 2");
  const double ext = tomogram_q_extent(w.lattice());
  return radon_transform(w, uniform_angles(n_angles), -ext,
                         2.0 * ext / static_cast<double>(n_q), n_q);
}

Tomogram radon_transform(const PhaseSpaceFunction& w, const std::vector<double>& thetas,
                         double q_start, double q_step, std::size_t n_q) {
  check_angles(thetas, "radon_transform");
  if (!(q_step > 0.0) || n_q < 2) {
    throw ValidationError("radon_transform: Q grid needs a positive step and n_q >= 2");
  }
  const PhaseSpaceFunction main = to_main_grid(w);
  const Lattice& lat = w.lattice();
  const Eigen::MatrixXd wr = main.values().real();
  const Support s = support_of(wr);

  Tomogram tom{lat, thetas, q_start, q_step,
               Eigen::MatrixXd::Zero(static_cast<Index>(thetas.size()),
                                     static_cast<Index>(n_q))};
  if (s.r1 == 0) return tom;

  const Index nr = s.r1 - s.r0;
  const Index nc = s.c1 - s.c0;
  const Eigen::MatrixXd ws = wr.block(s.r0, s.c0, nr, nc);
  const Index nk = static_cast<Index>(n_q);
  const double dk = 2.0 * kPi / (static_cast<double>(n_q) * q_step);
  const double cell = lat.dq() * lat.symbol_dp();

  // Slice spectra W^(k n_theta) = sum W e^{-i k n.x} dq dp, one column per angle.
  CMatrix spectra(nk, static_cast<Index>(thetas.size()));
  Eigen::MatrixXd ep_re(nc, nk), ep_im(nc, nk);
  for (std::size_t a = 0; a < thetas.size(); ++a) {
    const double c = std::cos(thetas[a]);
    const double sn = std::sin(thetas[a]);
    for (Index j = 0; j < nc; ++j) {
      const double p = lat.symbol_p(static_cast<std::size_t>(s.c0 + j));
      for (Index n = 0; n < nk; ++n) {
        const double k = (static_cast<double>(n) - static_cast<double>(nk / 2)) * dk;
        ep_re(j, n) = std::cos(k * sn * p);
        ep_im(j, n) = -std::sin(k * sn * p);
      }
    }
    const Eigen::MatrixXd t_re = ws * ep_re;
    const Eigen::MatrixXd t_im = ws * ep_im;
    for (Index n = 0; n < nk; ++n) {
      const double k = (static_cast<double>(n) - static_cast<double>(nk / 2)) * dk;
      cplx acc = 0.0;
      for (Index i = 0; i < nr; ++i) {
        const double q = lat.q(static_cast<std::size_t>(s.r0 + i));
        acc += std::polar(1.0, -k * c * q) * cplx(t_re(i, n), t_im(i, n));
      }
      spectra(n, static_cast<Index>(a)) = acc * cell;
    }
  }

  // R(Q_m) = (dk / 2 pi) sum_n W^(k_n) e^{i k_n Q_m}.
  CMatrix back(nk, nk);
  for (Index m = 0; m < nk; ++m) {
    const double qm = q_start + static_cast<double>(m) * q_step;
    for (Index n = 0; n < nk; ++n) {
      const double k = (static_cast<double>(n) - static_cast<double>(nk / 2)) * dk;
      back(m, n) = std::polar(dk / (2.0 * kPi), k * qm);
    }
  }
  tom.values = (back * spectra).real().transpose();
  return tom;
}

double ramp_kernel(double s, double band_limit) {
  const double k = band_limit;
  const double x = k * s;
  double integral;  // integral_0^K k cos(ks) dk
  if (std::abs(x) < 1e-2) {
    const double x2 = x * x;
    integral = k * k * (0.5 - x2 / 8.0 + x2 * x2 / 144.0);
  } else {
    integral = k * std::sin(x) / s + (std::cos(x) - 1.0) / (s * s);
  }
  return integral / (2.0 * kPi * kPi);
}

namespace {

// Filtered projections on a fine grid u_i = q_start + i q_step / oversample,
// one row per angle.
struct FilteredProjections {
  double u_start;
  double u_step;
  Eigen::MatrixXd values;
};

FilteredProjections filter_projections(const Tomogram& tom, std::size_t oversample) {
  const Index nq = static_cast<Index>(tom.n_q());
  const Index nf = nq * static_cast<Index>(oversample) + 1;
  const double band = kPi / tom.q_step;
  FilteredProjections f{tom.q_start, tom.q_step / static_cast<double>(oversample), {}};
  Eigen::MatrixXd kernel(nq, nf);
  for (Index m = 0; m < nq; ++m) {
    for (Index i = 0; i < nf; ++i) {
      const double s = f.u_start + static_cast<double>(i) * f.u_step - tom.q(static_cast<std::size_t>(m));
      kernel(m, i) = ramp_kernel(s, band) * tom.q_step;
    }
  }
  f.values = tom.values * kernel;
  return f;
}

}  // namespace

PhaseSpaceFunction inverse_radon(const Tomogram& tom, InverseRadonOptions options) {
  tom.validate();
  if (options.oversample == 0) throw ValidationError("inverse_radon: oversample must be >= 1");
  if (tom.n_angles() < kMinAngles) {
    std::ostringstream os;
    os << "inverse_radon: only " << tom.n_angles() << " angles (fewer than " << kMinAngles
       << "); the reconstruction tolerance is degraded";
    warn(os.str());
  }
  const Lattice& lat = tom.lattice;
  const FilteredProjections f = filter_projections(tom, options.oversample);
  const std::vector<double> wts = angle_weights(tom.thetas);
  const Index nf = f.values.cols();

  const std::size_t nrow = options.rows == RowGrid::half ? lat.half_size() : lat.size();
  const std::size_t ncol = lat.symbol_p_size();
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(static_cast<Index>(nrow), static_cast<Index>(ncol));
  for (std::size_t a = 0; a < tom.n_angles(); ++a) {
    const double c = std::cos(tom.thetas[a]);
    const double s = std::sin(tom.thetas[a]);
    const auto row = f.values.row(static_cast<Index>(a));
    for (std::size_t i = 0; i < nrow; ++i) {
      const double q = options.rows == RowGrid::half ? lat.half_q(i) : lat.q(i);
      for (std::size_t j = 0; j < ncol; ++j) {
        const double u = (c * q + s * lat.symbol_p(j) - f.u_start) / f.u_step;
        const double fl = std::floor(u);
        const Index k0 = static_cast<Index>(fl);
        double v = 0.0;
        if (k0 >= 0 && k0 + 1 < nf) {
          const double t = u - fl;
          v = (1.0 - t) * row(k0) + t * row(k0 + 1);
        } else if (k0 + 1 == nf) {
          v = row(k0);
        }
        out(static_cast<Index>(i), static_cast<Index>(j)) += wts[a] * v;
      }
    }
  }
  return PhaseSpaceFunction(lat, options.rows, out.cast<cplx>(), true);
}

double tomographic_mean(const Tomogram& tom, const PhaseSpaceFunction& a,
                        InverseRadonOptions options) {
  require_same_lattice(tom.lattice, a.lattice(), "tomographic_mean");
  // The integral only reads lattice rows.
  const PhaseSpaceFunction am = to_main_grid(a);
  options.rows = RowGrid::main;
  const PhaseSpaceFunction w = inverse_radon(tom, options);
  const PhaseSpaceFunction prod(am.lattice(), RowGrid::main,
                                am.values().cwiseProduct(w.values()));
  return phase_space_integral(prod).real();
}

}  // namespace moyal
