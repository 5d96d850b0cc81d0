// SPDX-License-Identifier: Apache-2.0
//
// tcsl: time-cluster spatial-lobe channel simulator
// Copyright (C) 2026 The tcsl authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

// OpenMP kernels against their serial references.
//   ./tcsl_bench --benchmark_filter=Simulate

#include "tcsl/antenna.hpp"
#include "tcsl/batch.hpp"

#include <benchmark/benchmark.h>

#include <thread>

using namespace tcsl;

namespace
{

BatchJob bench_job()
{
    BatchJob job;
    job.config = preset_config(16.95, Condition::NLOS);
    return job;
}

struct Fixture
{
    BatchJob job = bench_job();
    ResolvedAntennas antennas = resolve_antennas(job);
};

const Fixture &fixture()
{
    static const Fixture f;
    return f;
}

void BM_SimulateSerial(benchmark::State &state)
{
    const Fixture &f = fixture();
    const auto n = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(simulate_range_serial(f.job.config, f.antennas, f.job.sweep, 0, n));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_SimulateParallel(benchmark::State &state)
{
    const Fixture &f = fixture();
    const auto n = static_cast<std::uint64_t>(state.range(0));
    const int workers = static_cast<int>(state.range(1));
    for (auto _ : state)
        benchmark::DoNotOptimize(simulate_range(f.job.config, f.antennas, f.job.sweep, 0, n, workers));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_SphericalIntegralSerial(benchmark::State &state)
{
    const AntennaPattern p = synthesize_3gpp({}, 1.0 / static_cast<double>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(spherical_integral_serial(p));
}

void BM_SphericalIntegralParallel(benchmark::State &state)
{
    const AntennaPattern p = synthesize_3gpp({}, 1.0 / static_cast<double>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(spherical_integral(p));
}

int hardware_workers()
{
    const unsigned n = std::thread::hardware_concurrency();
    return n == 0 ? 1 : static_cast<int>(n);
}

} // namespace

BENCHMARK(BM_SimulateSerial)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SimulateParallel)
    ->Args({256, 1})
    ->Args({256, 2})
    ->Args({256, hardware_workers()})
    ->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SphericalIntegralSerial)->Arg(1)->Arg(4)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_SphericalIntegralParallel)->Arg(1)->Arg(4)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
