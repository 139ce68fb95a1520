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

#include <cstdint>
#include <string>
#include <vector>

#include "moyal/lattice.hpp"
#include "moyal/lyapunov.hpp"
#include "moyal/states.hpp"
#include "moyal/tomography.hpp"
#include "moyal/trajectory.hpp"
#include "moyal/weyl.hpp"

namespace moyal::io {

/// 64-bit FNV-1a of the text, as 16 hex digits.
std::string config_hash(const std::string& text);

/// Writes through a temporary sibling and renames, so a failed run never
/// leaves a truncated file behind. Throws Error on I/O failure.
void write_file_atomic(const std::string& path, const std::string& content);

// Every CSV starts with "# config_hash=<hash>" when a hash is given, then a
// header row.

/// q,re,im
std::string state_csv(const WaveFunction& psi, const std::string& hash = {});
/// q,p,value (real part; Wigner functions and real symbols)
std::string phase_space_csv(const PhaseSpaceFunction& a, const std::string& hash = {});
/// t,Q,P,provenance,hbar,epsilon
std::string trajectory_csv(const Trajectory& tr, const std::string& hash = {});
/// theta,Q,value
std::string tomogram_csv(const Tomogram& tom, const std::string& hash = {});
/// t,norm for one gradient route
std::string norm_series_csv(const std::vector<double>& times, const std::vector<double>& norms,
                            const std::string& hash = {});

/// Parses theta,Q,value rows (any order) into a tomogram on the given
/// lattice; the Q values must form one uniform grid shared by all angles.
Tomogram parse_tomogram_csv(const std::string& text, const Lattice& lattice);

/**
 * Binary grid: magic "PSF1", uint64 n_q, uint64 n_p, then doubles q0, dq,
 * p0, dp, hbar, then n_q * n_p doubles row-major (q slowest). Little-endian
 * host layout.
 */
struct GridFile {
  std::uint64_t n_q = 0;
  std::uint64_t n_p = 0;
  double q0 = 0.0;
  double dq = 0.0;
  double p0 = 0.0;
  double dp = 0.0;
  double hbar = 0.0;
  std::vector<double> values;
};

std::string phase_space_binary(const PhaseSpaceFunction& a);
GridFile parse_phase_space_binary(const std::string& bytes);

std::string estimate_json(const LyapunovEstimate& e);
std::string report_json(const ComparisonReport& r, const std::string& hash = {});

std::string read_file(const std::string& path);

}  // namespace moyal::io
