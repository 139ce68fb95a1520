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

#include "moyal/trajectory.hpp"

#include <cmath>

#include "moyal/diagnostics.hpp"

namespace moyal {

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::classical: return "classical";
    case Provenance::quantum: return "quantum";
    case Provenance::smeared: return "smeared";
  }
  return "unknown";
}

void require_increasing(const std::vector<double>& times, const char* who) {
  if (times.empty()) throw ValidationError(std::string(who) + ": no sample times");
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!std::isfinite(times[i])) throw ValidationError(std::string(who) + ": time is not finite");
    if (i > 0 && !(times[i] > times[i - 1])) {
      throw ValidationError(std::string(who) + ": times must be strictly increasing");
    }
  }
}

void Trajectory::validate() const {
  require_increasing(times, "Trajectory");
  if (points.size() != times.size()) throw ValidationError("Trajectory: size mismatch");
  for (const auto& x : points) {
    if (!std::isfinite(x.q) || !std::isfinite(x.p)) {
      throw ValidationError("Trajectory: non-finite point");
    }
  }
}

std::vector<double> linspace(double t0, double t1, std::size_t n) {
  if (n < 2) return {t0};
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = t0 + (t1 - t0) * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  out.back() = t1;
  return out;
}

}  // namespace moyal
