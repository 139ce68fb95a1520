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

#include <optional>
#include <string>
#include <vector>

#include "moyal/hamiltonian.hpp"
#include "moyal/lattice.hpp"
#include "moyal/lyapunov.hpp"

namespace moyal::cli {

struct LatticeBlock {
  /// One entry, or one per hbar value.
  std::vector<std::size_t> n_points;
  double q_min = 0.0;
  double q_max = 0.0;
  std::vector<double> hbar;

  /// One lattice per hbar value.
  std::vector<Lattice> lattices() const;
};

struct StateBlock {
  std::string kind = "gaussian";  // gaussian | oscillator
  int level = 0;
  PhasePoint x0;
};

struct ExperimentBlock {
  PhasePoint x0;
  PhasePoint v{1.0, 0.0};
  double t_max = 10.0;
  std::optional<FitWindow> fit_window;
  std::size_t n_samples = 201;
  std::optional<double> epsilon;
  std::size_t n_angles = 256;
  std::optional<std::string> tomogram_input;
  double egorov_time = 1.0;
  bool clip_to_escape = false;
  GradientOptions gradient;
};

struct OutputBlock {
  std::string directory = "moyal_out";
  bool csv = true;
  bool binary = false;
};

struct RunConfig {
  LatticeBlock lattice;
  /// Required by the dynamics commands only.
  std::optional<HamiltonianSpec> system;
  StateBlock state;
  ExperimentBlock experiment;
  OutputBlock output;
  /// FNV-1a of the config text as read.
  std::string hash;
};

/**
 * Parses a JSON config (C and C++ style comments allowed). Throws
 * ValidationError naming the line for syntax errors and the dotted field
 * path for bad values. A non-unit experiment.v is normalized with a warning.
 */
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

}  // namespace moyal::cli
