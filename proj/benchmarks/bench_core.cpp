// Copyright 2026 The ergospin Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include <benchmark/benchmark.h>

#include "ergospin/disorder.hpp"
#include "ergospin/dynamics.hpp"
#include "ergospin/gns.hpp"
#include "ergospin/groundstate.hpp"
#include "ergospin/interaction.hpp"

using namespace ergospin;

namespace {

Interaction xy_field(std::uint64_t seed) {
  return Interaction(1, 2, {germs::xy(1, 1.0, 0.3), germs::field(1, 'z')},
                     DisorderField(seed, law::Uniform{-1.0, 1.0}));
}

void BM_PhiloxBlock(benchmark::State& state) {
  std::uint32_t c = 0;
  for (auto _ : state) {
    auto out = philox4x32({c++, 0, 0, 0}, {0x12345678, 0x9abcdef0});
    benchmark::DoNotOptimize(out);
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_PhiloxBlock);

void BM_SampleGaussian(benchmark::State& state) {
  const DisorderField f(7, law::Gaussian{0.0, 1.0});
  int x = 0;
  for (auto _ : state) benchmark::DoNotOptimize(f.sample(Site{x++, 3}));
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_SampleGaussian);

void BM_Assemble(benchmark::State& state) {
  const Interaction phi = xy_field(1);
  const Volume v = chain(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(assemble(phi, v));
}
BENCHMARK(BM_Assemble)->DenseRange(4, 10, 2)->Unit(benchmark::kMillisecond);

void BM_Propagator(benchmark::State& state) {
  const Hamiltonian h = assemble(xy_field(2), chain(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(Propagator(h));
}
BENCHMARK(BM_Propagator)->DenseRange(4, 10, 2)->Unit(benchmark::kMillisecond);

void BM_Evolve(benchmark::State& state) {
  const Propagator p(assemble(xy_field(3), chain(static_cast<int>(state.range(0)))));
  const LocalOperator a = LocalOperator::at_site(Site{0}, pauli::x());
  for (auto _ : state) benchmark::DoNotOptimize(p.evolve(a, 0.7));
}
BENCHMARK(BM_Evolve)->DenseRange(4, 10, 2)->Unit(benchmark::kMillisecond);

void BM_LRCertificate(benchmark::State& state) {
  const FFunction f = FFunction::power_law(1, 1.0);
  const int n = static_cast<int>(state.range(0));
  const LocalOperator a = LocalOperator::at_site(Site{0}, pauli::x());
  const LocalOperator b = LocalOperator::at_site(Site{n - 1}, pauli::x());
  const std::vector<double> times{0.0, 0.5, 1.0, 1.5, 2.0};
  for (auto _ : state) benchmark::DoNotOptimize(lr_certify(xy_field(4), f, chain(n), a, b, times));
}
BENCHMARK(BM_LRCertificate)->DenseRange(4, 8, 2)->Unit(benchmark::kMillisecond);

void BM_GroundState(benchmark::State& state) {
  const Hamiltonian h = assemble(xy_field(5), chain(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(ground_state(h));
}
BENCHMARK(BM_GroundState)->DenseRange(4, 10, 2)->Unit(benchmark::kMillisecond);

void BM_GnsTriple(benchmark::State& state) {
  const Hamiltonian h = assemble(xy_field(6), chain(static_cast<int>(state.range(0))));
  const StateFunctional gs = ground_state(h).state;
  for (auto _ : state) benchmark::DoNotOptimize(build_gns(gs, h));
}
BENCHMARK(BM_GnsTriple)->DenseRange(2, 4, 1)->Unit(benchmark::kMillisecond);

void BM_FNorm(benchmark::State& state) {
  const Interaction phi = xy_field(7);
  const FFunction f = FFunction::power_law(1, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(f_norm(phi, f, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_FNorm)->Arg(8)->Arg(32)->Arg(128);

}  // namespace

BENCHMARK_MAIN();
