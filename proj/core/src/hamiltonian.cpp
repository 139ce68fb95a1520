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

#include "moyal/hamiltonian.hpp"

#include <cmath>
#include <set>
#include <sstream>

#include "moyal/diagnostics.hpp"

namespace moyal {

namespace {

double horner(const std::vector<double>& c, double q) {
  double s = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) s = s * q + *it;
  return s;
}

std::vector<double> derivative(const std::vector<double>& c) {
  std::vector<double> d;
  for (std::size_t k = 1; k < c.size(); ++k) d.push_back(static_cast<double>(k) * c[k]);
  return d;
}

std::size_t degree(const std::vector<double>& c) {
  std::size_t d = 0;
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (c[k] != 0.0) d = k;
  }
  return d;
}

double take(const std::map<std::string, double>& params, const std::string& key,
            double fallback, std::set<std::string>& used) {
  used.insert(key);
  auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

}  // namespace

double HamiltonianSpec::potential(double q) const { return horner(coefficients, q); }

double HamiltonianSpec::force(double q) const { return -horner(derivative(coefficients), q); }

double HamiltonianSpec::curvature(double q) const {
  return horner(derivative(derivative(coefficients)), q);
}

bool HamiltonianSpec::confining() const {
  const std::size_t d = degree(coefficients);
  return d >= 2 && d % 2 == 0 && coefficients[d] > 0.0;
}

bool HamiltonianSpec::quadratic() const { return degree(coefficients) <= 2; }

HamiltonianSpec make_hamiltonian_spec(const std::string& name,
                                      const std::map<std::string, double>& parameters) {
  HamiltonianSpec s;
  s.name = name;
  std::set<std::string> used;
  if (name == "harmonic" || name == "inverted") {
    const double w = take(parameters, "omega", 1.0, used);
    const double sign = name == "harmonic" ? 1.0 : -1.0;
    s.coefficients = {0.0, 0.0, sign * 0.5 * w * w};
    s.parameters["omega"] = w;
  } else if (name == "quartic") {
    const double lam = take(parameters, "lambda", 1.0, used);
    const double w = take(parameters, "omega", 0.0, used);
    s.coefficients = {0.0, 0.0, 0.5 * w * w, 0.0, 0.25 * lam};
    s.parameters["lambda"] = lam;
    s.parameters["omega"] = w;
  } else if (name == "free") {
    s.coefficients = {0.0};
  } else {
    std::ostringstream os;
    os << "unknown potential '" << name << "'; known:";
    for (const auto& n : potential_registry()) os << ' ' << n;
    throw ValidationError(os.str());
  }
  for (const auto& [k, v] : parameters) {
    if (!used.count(k)) {
      throw ValidationError("potential '" + name + "' has no parameter '" + k + "'");
    }
    if (!std::isfinite(v)) throw ValidationError("parameter '" + k + "' is not finite");
  }
  return s;
}

HamiltonianSpec polynomial_spec(std::vector<double> coefficients) {
  if (coefficients.empty()) throw ValidationError("polynomial potential needs coefficients");
  for (double c : coefficients) {
    if (!std::isfinite(c)) throw ValidationError("polynomial coefficient is not finite");
  }
  HamiltonianSpec s;
  s.name = "polynomial";
  s.coefficients = std::move(coefficients);
  return s;
}

std::vector<std::string> potential_registry() {
  return {"harmonic", "inverted", "quartic", "free", "polynomial"};
}

OperatorMatrix build_hamiltonian(const Lattice& lattice, const HamiltonianSpec& spec) {
  Eigen::VectorXd kin(static_cast<Eigen::Index>(lattice.size()));
  for (std::size_t k = 0; k < lattice.size(); ++k) {
    kin[static_cast<Eigen::Index>(k)] = 0.5 * lattice.p(k) * lattice.p(k);
  }
  CMatrix h = momentum_function(lattice, kin).matrix();
  for (std::size_t j = 0; j < lattice.size(); ++j) {
    const double v = spec.potential(lattice.q(j));
    if (!std::isfinite(v)) throw ValidationError("potential is not finite on the grid");
    h(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j)) += v;
  }
  return OperatorMatrix(lattice, std::move(h), OperatorKind::observable, true);
}

}  // namespace moyal
