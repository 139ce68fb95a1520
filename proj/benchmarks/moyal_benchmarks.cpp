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

// Kernel timings against lattice size: Wigner transform, star product,
// Hamiltonian eigensolve, quantum trajectory readout and Radon projections.

#include <cmath>
#include <vector>

#include <benchmark/benchmark.h>

#include "moyal/dynamics.hpp"
#include "moyal/hamiltonian.hpp"
#include "moyal/states.hpp"
#include "moyal/tomography.hpp"
#include "moyal/weyl.hpp"

namespace {

using namespace moyal;

Lattice lattice_for(benchmark::State& state) {
  return make_lattice(static_cast<std::size_t>(state.range(0)), -10.0, 10.0, 1.0);
}

PhaseSpaceFunction bump(const Lattice& l, double q0, double p0) {
  return sample_symbol(l, [=](double q, double p) {
    return cplx(std::exp(-0.5 * (q - q0) * (q - q0) - 0.5 * (p - p0) * (p - p0)));
  });
}

void BM_WignerTransform(benchmark::State& state) {
  const Lattice l = lattice_for(state);
  const WaveFunction psi = oscillator_state(l, 2, {0.5, -0.5});
  for (auto _ : state) benchmark::DoNotOptimize(wigner_of(psi));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_WignerTransform)->RangeMultiplier(2)->Range(64, 512)->Complexity();

void BM_StarProduct(benchmark::State& state) {
  const Lattice l = lattice_for(state);
  const PhaseSpaceFunction a = bump(l, 0.5, 0.0);
  const PhaseSpaceFunction b = bump(l, -0.5, 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(star_product(a, b));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_StarProduct)->RangeMultiplier(2)->Range(64, 256)->Complexity();

void BM_Eigensolve(benchmark::State& state) {
  const Lattice l = lattice_for(state);
  const OperatorMatrix h = build_hamiltonian(l, make_hamiltonian_spec("quartic"));
  for (auto _ : state) benchmark::DoNotOptimize(SpectralPropagator(h));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Eigensolve)->RangeMultiplier(2)->Range(64, 512)->Complexity(benchmark::oNCubed);

// One readout point at 1 time and at 64 times: the difference is the O(N^2)
// per-time cost, the rest is the per-point basis change.
void BM_TrajectoryReadout(benchmark::State& state) {
  const Lattice l = make_lattice(static_cast<std::size_t>(state.range(0)), -12.8, 12.8, 1.0);
  const PhasePoint x0{1.0, 0.5};
  const QuantumDynamics dyn(l, make_hamiltonian_spec("quartic"), {x0});
  const std::vector<double> times = linspace(0.05, 3.2, static_cast<std::size_t>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(dyn.symbols_at(x0, times));
}
BENCHMARK(BM_TrajectoryReadout)->ArgsProduct({{256, 512}, {1, 64}});

void BM_RadonTransform(benchmark::State& state) {
  const Lattice l = make_lattice(128, -8.0, 8.0, 1.0);
  const PhaseSpaceFunction w = wigner_of(gaussian_state(l, {0.5, 0.0}));
  const auto n_angles = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(radon_transform(w, n_angles));
}
BENCHMARK(BM_RadonTransform)->Arg(64)->Arg(256);

void BM_InverseRadon(benchmark::State& state) {
  const Lattice l = make_lattice(128, -8.0, 8.0, 1.0);
  const Tomogram tom =
      radon_transform(wigner_of(gaussian_state(l, {0.5, 0.0})), static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(inverse_radon(tom));
}
BENCHMARK(BM_InverseRadon)->Arg(64)->Arg(256);

}  // namespace

BENCHMARK_MAIN();
