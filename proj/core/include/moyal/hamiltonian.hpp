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

#pragma once

#include <map>
#include <string>
#include <vector>

#include "moyal/lattice.hpp"
#include "moyal/states.hpp"

namespace moyal {

/**
 * H(q, p) = p^2/2 + V(q) with a polynomial potential V(q) = sum_k c_k q^k.
 *
 * Registry names and their parameters:
 *   harmonic   omega (1)             V = omega^2 q^2 / 2
 *   inverted   omega (1)             V = -omega^2 q^2 / 2
 *   quartic    lambda (1), omega (0) V = omega^2 q^2 / 2 + lambda q^4 / 4
 *   free                             V = 0
 *   polynomial coefficients c_0..c_K
 */
struct HamiltonianSpec {
  std::string name;
  std::map<std::string, double> parameters;
  /// c_k multiplies q^k.
  std::vector<double> coefficients;

  double potential(double q) const;
  double force(double q) const;      // -V'(q)
  double curvature(double q) const;  // V''(q)
  double energy(PhasePoint x) const { return 0.5 * x.p * x.p + potential(x.q); }
  /// Even degree with a positive leading coefficient.
  bool confining() const;
  /// Degree at most two: the quantum flow of symbols is exactly classical.
  bool quadratic() const;
};

HamiltonianSpec make_hamiltonian_spec(const std::string& name,
                                      const std::map<std::string, double>& parameters = {});
HamiltonianSpec polynomial_spec(std::vector<double> coefficients);
std::vector<std::string> potential_registry();

/// Spectral kinetic term F^+ diag(p_k^2/2) F plus diagonal V(q_j).
OperatorMatrix build_hamiltonian(const Lattice& lattice, const HamiltonianSpec& spec);

}  // namespace moyal
