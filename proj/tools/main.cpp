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

// moyal: command-line driver.
//
//   moyal wigner     --config run.json   Wigner grid + metadata
//   moyal trajectory --config run.json   classical / quantum / smeared trajectories
//   moyal lyapunov   --config run.json   comparison report + norm series
//   moyal tomo       --config run.json   tomogram, reconstruction, metrics
//   moyal selfcheck                      invariant table
//
// Exit status: 0 success, 1 validation error, 2 numerical failure,
// 3 selfcheck failure.

#include <iostream>
#include <string>

#ifdef MOYAL_CLI11_PACKAGE
#include <CLI/CLI.hpp>
#else
#include <CLI11.hpp>
#endif

#include "commands.hpp"
#include "config.hpp"
#include "moyal/diagnostics.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kValidation = 1;
constexpr int kNumerical = 2;
constexpr int kSelfcheck = 3;

}  // namespace

int main(int argc, char** argv) {
  using namespace moyal;
  CLI::App app{"Phase-space quantum mechanics on a 1-D lattice"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "moyal 0.1.0");

  std::string config_path;
  std::string out_dir;
  const auto add_run = [&](const char* name, const char* help) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("-c,--config", config_path, "JSON config file")->required();
    sub->add_option("-o,--output", out_dir, "Override output.directory");
    return sub;
  };
  CLI::App* wigner = add_run("wigner", "Wigner function of the configured state");
  CLI::App* trajectory = add_run("trajectory", "Classical and quantum trajectories");
  CLI::App* lyapunov = add_run("lyapunov", "Classical vs quantum Lyapunov comparison");
  CLI::App* tomo = add_run("tomo", "Radon tomogram and reconstruction");
  CLI::App* selfcheck = app.add_subcommand("selfcheck", "Run the invariant suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kValidation;
  }

  if (selfcheck->parsed()) {
    try {
      return cli::cmd_selfcheck(std::cout) ? kOk : kSelfcheck;
    } catch (const std::exception& e) {
      std::cerr << "moyal: selfcheck: " << e.what() << "\n";
      return kSelfcheck;
    }
  }

  try {
    cli::RunConfig config = cli::load_config(config_path);
    if (!out_dir.empty()) config.output.directory = out_dir;
    cli::Artifacts files;
    int status = kOk;
    if (wigner->parsed()) {
      files = cli::cmd_wigner(config);
    } else if (trajectory->parsed()) {
      files = cli::cmd_trajectory(config);
    } else if (lyapunov->parsed()) {
      bool usable = false;
      files = cli::cmd_lyapunov(config, &usable);
      if (!usable) {
        std::cerr << "moyal: lyapunov: no hbar row produced a quantum estimate\n";
        status = kNumerical;
      }
    } else if (tomo->parsed()) {
      files = cli::cmd_tomo(config);
    }
    for (const std::string& path : cli::write_artifacts(config, files)) std::cout << path << "\n";
    return status;
  } catch (const ValidationError& e) {
    std::cerr << "moyal: " << e.what() << "\n";
    return kValidation;
  } catch (const NumericalError& e) {
    std::cerr << "moyal: " << e.what() << "\n";
    return kNumerical;
  } catch (const Error& e) {
    std::cerr << "moyal: " << e.what() << "\n";
    return kValidation;
  } catch (const std::exception& e) {
    std::cerr << "moyal: internal error: " << e.what() << "\n";
    return kNumerical;
  }
}
