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

#include <string>
#include <vector>

#include "moyal/lattice.hpp"

namespace moyal {

enum class Provenance { classical, quantum, smeared };

std::string to_string(Provenance p);

/// Time series X(t) = (Q(t), P(t)).
struct Trajectory {
  std::vector<double> times;
  std::vector<PhasePoint> points;
  Provenance provenance = Provenance::classical;
  double hbar = 0.0;
  double epsilon = 0.0;

  /// Throws ValidationError unless times strictly increase, sizes match and
  /// every point is finite.
  void validate() const;
};

/// Throws ValidationError unless the times are finite and strictly increasing.
void require_increasing(const std::vector<double>& times, const char* who);

/// n evenly spaced samples from t0 to t1 inclusive.
std::vector<double> linspace(double t0, double t1, std::size_t n);

}  // namespace moyal
