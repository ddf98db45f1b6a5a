// Copyright 2026 The ntoffoli Authors
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

#include <random>

#include <benchmark/benchmark.h>

#include "ntoffoli/channel.h"
#include "ntoffoli/evolution.h"
#include "ntoffoli/fidelity.h"
#include "ntoffoli/gates.h"

namespace ntoffoli {
namespace {

Operator random_hermitian(Index d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  Operator a(d, d);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) a(i, j) = Complex(g(rng), g(rng));
  return 0.5 * (a + a.adjoint());
}

void BM_Kron(benchmark::State& state) {
  const Index d = state.range(0);
  const Operator a = random_hermitian(d, 1), b = random_hermitian(d, 2);
  for (auto _ : state) benchmark::DoNotOptimize(kron(a, b));
}
BENCHMARK(BM_Kron)->Arg(4)->Arg(8)->Arg(16);

void BM_UnitaryExp(benchmark::State& state) {
  const Operator h = random_hermitian(state.range(0), 3);
  for (auto _ : state) benchmark::DoNotOptimize(unitary_exp(h, 0.7));
}
BENCHMARK(BM_UnitaryExp)->Arg(8)->Arg(32)->Arg(128);

void BM_DrivenPropagator(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const DeviceModel dev = DeviceModel::star(n, 2.0 * kPi * 40e6);
  const DriveSpec drive = itoffoli_drive(dev, 2.0 * kPi * 5e6);
  for (auto _ : state) benchmark::DoNotOptimize(driven_propagator(dev, drive, 50e-9));
}
BENCHMARK(BM_DrivenPropagator)->DenseRange(2, 5);

void BM_StructuredApply(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const DeviceModel dev = DeviceModel::star(n, 2.0 * kPi * 40e6);
  const auto gen = StructuredGenerator::rotating_frame(dev, itoffoli_drive(dev, 2.0 * kPi * 5e6),
                                                       NoiseSpec::uniform(n + 1, 30e-6, 30e-6));
  const Operator x = random_hermitian(dev.dim(), 4);
  Operator out(dev.dim(), dev.dim());
  for (auto _ : state) {
    gen.apply(0.0, x, out);
    benchmark::DoNotOptimize(out.data());
  }
}
BENCHMARK(BM_StructuredApply)->DenseRange(2, 5);

void BM_NoisyChannel(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const DeviceModel dev = DeviceModel::star(n, 2.0 * kPi * 40e6);
  const auto gen = StructuredGenerator::rotating_frame(dev, itoffoli_drive(dev, 2.0 * kPi * 5e6),
                                                       NoiseSpec::uniform(n + 1, 30e-6, 30e-6));
  for (auto _ : state) benchmark::DoNotOptimize(Channel::from_generator(gen, 50e-9));
}
BENCHMARK(BM_NoisyChannel)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

void BM_SubspaceFidelity(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(weighted_trace_fidelity(6, 8.0));
}
BENCHMARK(BM_SubspaceFidelity);

}  // namespace
}  // namespace ntoffoli

BENCHMARK_MAIN();
