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

#include "moyal/io.hpp"

#include <cstring>
#include <filesystem>
#include <sstream>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "moyal/diagnostics.hpp"

namespace moyal {
namespace {

namespace fs = std::filesystem;

const Lattice& lattice() {
  static const Lattice l = make_lattice(16, -4.0, 4.0, 1.0);
  return l;
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream is(text);
  for (std::string line; std::getline(is, line);) out.push_back(line);
  return out;
}

TEST(ConfigHash, FnvReferenceValues) {
  EXPECT_EQ(io::config_hash(""), "cbf29ce484222325");
  EXPECT_EQ(io::config_hash("a"), "af63dc4c8601ec8c");
  EXPECT_NE(io::config_hash("{\"a\":1}"), io::config_hash("{\"a\":2}"));
}

TEST(AtomicWrite, ReplacesWithoutLeftovers) {
  const fs::path dir = fs::temp_directory_path() / "moyal_io_test";
  fs::create_directories(dir);
  const std::string path = (dir / "out.csv").string();
  io::write_file_atomic(path, "first\n");
  io::write_file_atomic(path, "second\n");
  EXPECT_EQ(io::read_file(path), "second\n");
  for (const auto& e : fs::directory_iterator(dir)) {
    EXPECT_EQ(e.path().filename(), "out.csv");
  }
  // Parent directories are created; a file in the way is an error.
  EXPECT_THROW(io::write_file_atomic((dir / "out.csv" / "x.csv").string(), "x"), Error);
  io::write_file_atomic((dir / "sub" / "x.csv").string(), "x");
  EXPECT_EQ(io::read_file((dir / "sub" / "x.csv").string()), "x");
  fs::remove_all(dir);
}

TEST(Csv, StateAndPhaseSpaceLayouts) {
  const WaveFunction psi = gaussian_state(lattice(), {0.5, 0.5});
  const auto s = lines(io::state_csv(psi, "00ff"));
  ASSERT_EQ(s.size(), 2 + lattice().size());
  EXPECT_EQ(s[0], "# config_hash=00ff");
  EXPECT_EQ(s[1], "q,re,im");

  const PhaseSpaceFunction w = wigner_of(psi);
  const auto p = lines(io::phase_space_csv(w));
  ASSERT_EQ(p.size(), 1 + w.n_q() * w.n_p());
  EXPECT_EQ(p[0], "q,p,value");
  double q = 0, pp = 0, v = 0;
  ASSERT_EQ(std::sscanf(p[1].c_str(), "%lf,%lf,%lf", &q, &pp, &v), 3);
  EXPECT_DOUBLE_EQ(q, w.q(0));
  EXPECT_DOUBLE_EQ(pp, w.p(0));
  EXPECT_DOUBLE_EQ(v, w(0, 0).real());
}

TEST(Csv, TrajectoryLayout) {
  Trajectory tr;
  tr.times = {0.0, 0.5};
  tr.points = {{1.0, 2.0}, {3.0, 4.0}};
  tr.provenance = Provenance::smeared;
  tr.hbar = 0.5;
  tr.epsilon = 0.25;
  const auto l = lines(io::trajectory_csv(tr));
  ASSERT_EQ(l.size(), 3u);
  EXPECT_EQ(l[0], "t,Q,P,provenance,hbar,epsilon");
  EXPECT_NE(l[2].find(",smeared,"), std::string::npos) << l[2];
}

TEST(Csv, TomogramRoundTrip) {
  const Tomogram tom = radon_transform(wigner_of(gaussian_state(lattice(), {})), 6);
  const Tomogram back = io::parse_tomogram_csv(io::tomogram_csv(tom, "abc"), lattice());
  ASSERT_EQ(back.n_angles(), tom.n_angles());
  ASSERT_EQ(back.n_q(), tom.n_q());
  EXPECT_DOUBLE_EQ(back.q_start, tom.q_start);
  EXPECT_NEAR(back.q_step, tom.q_step, 1e-15);
  EXPECT_EQ(back.values, tom.values);
  for (std::size_t i = 0; i < tom.n_angles(); ++i) EXPECT_DOUBLE_EQ(back.thetas[i], tom.thetas[i]);
}

TEST(Csv, TomogramParserRejectsRaggedGrids) {
  EXPECT_THROW(io::parse_tomogram_csv("theta,Q,value\n0,0,1\n0,1,1\n0.5,0,1\n", lattice()),
               ValidationError);
  EXPECT_THROW(io::parse_tomogram_csv("theta,Q,value\n0,0,1\n0,1,x\n", lattice()),
               ValidationError);
  EXPECT_THROW(io::parse_tomogram_csv("theta,Q,value\n0,0,1\n0,1,1\n0,3,1\n", lattice()),
               ValidationError);
}

TEST(Binary, PhaseSpaceRoundTrip) {
  const PhaseSpaceFunction w = wigner_of(gaussian_state(lattice(), {0.5, 0.0}));
  const std::string bytes = io::phase_space_binary(w);
  ASSERT_EQ(bytes.substr(0, 4), "PSF1");
  EXPECT_EQ(bytes.size(), 4 + 2 * 8 + 5 * 8 + w.n_q() * w.n_p() * 8);
  const io::GridFile g = io::parse_phase_space_binary(bytes);
  EXPECT_EQ(g.n_q, w.n_q());
  EXPECT_EQ(g.n_p, w.n_p());
  EXPECT_DOUBLE_EQ(g.q0, w.q(0));
  EXPECT_DOUBLE_EQ(g.dq, w.dq());
  EXPECT_DOUBLE_EQ(g.p0, w.p(0));
  EXPECT_DOUBLE_EQ(g.dp, w.dp());
  EXPECT_DOUBLE_EQ(g.hbar, 1.0);
  EXPECT_DOUBLE_EQ(g.values[3 * g.n_p + 5], w(3, 5).real());
  EXPECT_THROW(io::parse_phase_space_binary("PSF0"), ValidationError);
  EXPECT_THROW(io::parse_phase_space_binary(bytes.substr(0, bytes.size() - 1)), ValidationError);
}

TEST(Json, EstimateFields) {
  LyapunovEstimate e;
  e.value = 1.0;
  e.fit_window = {2.0, 8.0};
  e.growth_class = GrowthClass::exponential;
  e.route = Route::quantum_rho0v;
  e.power_exponent = std::nan("");
  const auto j = nlohmann::json::parse(io::estimate_json(e));
  EXPECT_EQ(j["growth_class"], "exponential");
  EXPECT_EQ(j["route"], "quantum_rho0v");
  EXPECT_DOUBLE_EQ(j["fit_window"][1].get<double>(), 8.0);
  EXPECT_TRUE(j["power_exponent"].is_null());
}

TEST(Json, ReportCarriesHashAndRowErrors) {
  ComparisonReport r;
  r.potential = "inverted";
  r.t_max = 4.0;
  CompareRow row;
  row.hbar = 0.5;
  row.errors.push_back("escape at t = 1.2");
  r.rows.push_back(row);
  const auto j = nlohmann::json::parse(io::report_json(r, "beef"));
  EXPECT_EQ(j["config_hash"], "beef");
  ASSERT_EQ(j["rows"].size(), 1u);
  EXPECT_EQ(j["rows"][0]["errors"][0], "escape at t = 1.2");
  EXPECT_TRUE(j["rows"][0]["quantum_fd"].is_null());
}

}  // namespace
}  // namespace moyal
