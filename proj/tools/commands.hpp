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

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "config.hpp"

namespace moyal::cli {

/// File name (relative to the output directory) -> content.
using Artifacts = std::map<std::string, std::string>;

/// Wigner function of the configured state plus normalization/bound metadata.
Artifacts cmd_wigner(const RunConfig& config);
/// Classical and quantum trajectories (and the smeared mean when
/// experiment.epsilon is set), one quantum file per hbar.
Artifacts cmd_trajectory(const RunConfig& config);
/// Comparison report over the hbar list plus norm series per route per hbar.
/// Row failures are recorded in the report; `usable` is set when at least one
/// row produced a quantum estimate.
Artifacts cmd_lyapunov(const RunConfig& config, bool* usable = nullptr);
/// Tomogram, reconstruction and error metrics. With experiment.tomogram_input
/// the tomogram is read from CSV and only reconstructed.
Artifacts cmd_tomo(const RunConfig& config);

/// Writes every artifact under config.output.directory; returns the paths.
std::vector<std::string> write_artifacts(const RunConfig& config, const Artifacts& files);

/// Invariant suite at N = 128, hbar = 1. Prints a pass/fail table; returns
/// true when every checked invariant holds.
bool cmd_selfcheck(std::ostream& out);

}  // namespace moyal::cli
