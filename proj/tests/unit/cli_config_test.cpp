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

#include "config.hpp"

#include <cmath>
#include <filesystem>

#include <gtest/gtest.h>

#include "commands.hpp"
#include "moyal/diagnostics.hpp"
#include "moyal/io.hpp"

namespace moyal::cli {
namespace {

const char* kMinimal = R"({"lattice": {"n_points": 64, "q_min": -4, "q_max": 4}})";

std::string error_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ValidationError& e) {
    return e.what();
  }
  return "";
}

TEST(Config, MinimalConfigTakesDefaults) {
  const RunConfig c = parse_config(kMinimal);
  ASSERT_EQ(c.lattice.lattices().size(), 1u);
  EXPECT_DOUBLE_EQ(c.lattice.lattices()[0].hbar(), 1.0);
  EXPECT_FALSE(c.system.has_value());
  EXPECT_EQ(c.state.kind, "gaussian");
  EXPECT_TRUE(c.output.csv);
  EXPECT_FALSE(c.output.binary);
  EXPECT_EQ(c.hash, io::config_hash(kMinimal));
}

TEST(Config, CommentsAreAllowed) {
  const RunConfig c = parse_config(R"(// header
    {"lattice": {"n_points": 64, /* inline */ "q_min": -4, "q_max": 4}})");
  EXPECT_EQ(c.lattice.n_points[0], 64u);
}

TEST(Config, SyntaxErrorNamesLine) {
  const std::string err = error_of("{\n\"lattice\": {\"n_points\": 64,\n\"q_min\": ,\n}}");
  EXPECT_NE(err.find("line 3"), std::string::npos) << err;
}

TEST(Config, FieldErrorsNameThePath) {
  EXPECT_NE(error_of(R"({"lattice": {"n_points": 64, "q_min": -4}})").find("lattice.q_max"),
            std::string::npos);
  EXPECT_NE(error_of(R"({"lattice": {"n_points": 64, "q_min": -4, "q_max": 4, "hbr": 1}})")
                .find("lattice.hbr"),
            std::string::npos);
  EXPECT_NE(error_of(R"({"lattice": {"n_points": 64, "q_min": -4, "q_max": 4},
                         "experiment": {"v": [1, "x"]}})")
                .find("experiment.v[1]"),
            std::string::npos);
  EXPECT_NE(error_of(R"({"lattice": {"n_points": 64, "q_min": -4, "q_max": 4},
                         "system": {"potential": "morse"}})")
                .find("system"),
            std::string::npos);
  EXPECT_NE(error_of(R"({"lattice": {"n_points": 64, "q_min": 4, "q_max": -4}})").find("lattice"),
            std::string::npos);
}

TEST(Config, DirectionIsNormalizedWithWarning) {
  WarningCapture capture;
  const RunConfig c = parse_config(R"({"lattice": {"n_points": 64, "q_min": -4, "q_max": 4},
                                       "experiment": {"v": [3, 4]}})");
  EXPECT_DOUBLE_EQ(c.experiment.v.q, 0.6);
  EXPECT_DOUBLE_EQ(c.experiment.v.p, 0.8);
  ASSERT_EQ(capture.messages().size(), 1u);
  EXPECT_NE(capture.messages()[0].find("experiment.v"), std::string::npos);
  EXPECT_FALSE(error_of(R"({"lattice": {"n_points": 64, "q_min": -4, "q_max": 4},
                            "experiment": {"v": [0, 0]}})")
                   .empty());
}

TEST(Config, HbarSweepWithPerRowSizes) {
  const RunConfig c = parse_config(R"({"lattice": {"n_points": [64, 128], "q_min": -4,
                                       "q_max": 4, "hbar": [0.4, 0.2]}})");
  const auto ls = c.lattice.lattices();
  ASSERT_EQ(ls.size(), 2u);
  EXPECT_EQ(ls[1].size(), 128u);
  EXPECT_DOUBLE_EQ(ls[1].hbar(), 0.2);
  EXPECT_FALSE(error_of(R"({"lattice": {"n_points": [64], "q_min": -4, "q_max": 4,
                            "hbar": [0.4, 0.2]}})")
                   .empty());
}

TEST(Config, SystemBlockBuildsRegistrySpecs) {
  const RunConfig q = parse_config(R"({"lattice": {"n_points": 64, "q_min": -4, "q_max": 4},
                                       "system": {"potential": "quartic",
                                                  "parameters": {"lambda": 2}}})");
  ASSERT_TRUE(q.system.has_value());
  EXPECT_DOUBLE_EQ(q.system->potential(1.0), 0.5);
  const RunConfig p = parse_config(R"({"lattice": {"n_points": 64, "q_min": -4, "q_max": 4},
                                       "system": {"potential": "polynomial",
                                                  "coefficients": [0, 0, 0.5]}})");
  EXPECT_TRUE(p.system->quadratic());
}

TEST(Config, FitWindowMustSitInsideSpan) {
  EXPECT_FALSE(error_of(R"({"lattice": {"n_points": 64, "q_min": -4, "q_max": 4},
                            "experiment": {"t_max": 5, "fit_window": [1, 6]}})")
                   .empty());
  EXPECT_FALSE(error_of(R"({"lattice": {"n_points": 64, "q_min": -4, "q_max": 4},
                            "experiment": {"fit_window": [3, 2]}})")
                   .empty());
}

TEST(Commands, WignerArtifactsCarryTheHash) {
  const RunConfig c = parse_config(R"({"lattice": {"n_points": 64, "q_min": -6, "q_max": 6},
                                       "output": {"formats": ["csv", "binary"]}})");
  const Artifacts files = cmd_wigner(c);
  ASSERT_EQ(files.count("wigner.csv"), 1u);
  ASSERT_EQ(files.count("wigner.psf"), 1u);
  EXPECT_EQ(files.at("wigner.csv").rfind("# config_hash=" + c.hash + "\n", 0), 0u);
  EXPECT_NE(files.at("wigner_meta.json").find(c.hash), std::string::npos);
}

TEST(Commands, DynamicsCommandsRequireASystem) {
  const RunConfig c = parse_config(kMinimal);
  EXPECT_THROW(cmd_lyapunov(c), ValidationError);
  EXPECT_THROW(cmd_trajectory(c), ValidationError);
}

}  // namespace
}  // namespace moyal::cli
