// Copyright 2026 The fluxctl Authors
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
#include <vector>

#include <benchmark/benchmark.h>

#include "fluxctl/dynamics.hpp"
#include "fluxctl/fir.hpp"
#include "fluxctl/fluxonium.hpp"
#include "fluxctl/pulse_compiler.hpp"
#include "fluxctl/rb.hpp"

using namespace fluxctl;

static void BM_Spectrum(benchmark::State &state) {
    fluxonium::Params p;
    p.basis_size = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(fluxonium::spectrum(p));
}
BENCHMARK(BM_Spectrum)->Arg(40)->Arg(120)->Unit(benchmark::kMillisecond);

static void BM_EvolvePiPulse(benchmark::State &state) {
    dynamics::DriveScenario sc;
    sc.levels = static_cast<int>(state.range(0));
    const dynamics::Simulator sim(sc);
    const dynamics::PulseShape shape;
    const auto w = dynamics::cosine_pulse(sim, 0.078, sim.f01(), 0.0, shape, true);
    for (auto _ : state) benchmark::DoNotOptimize(sim.evolve(w));
}
BENCHMARK(BM_EvolvePiPulse)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

static void BM_FirSynthesis(benchmark::State &state) {
    const auto target = filters::bounded_inverse(filters::gaussian_lowpass(0.092), 0.208);
    const int taps = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(filters::quantize_taps(filters::synthesize_fir(target, taps, 2.0)));
}
BENCHMARK(BM_FirSynthesis)->Arg(16)->Arg(64)->Unit(benchmark::kMicrosecond);

static void BM_CompileRbProgram(benchmark::State &state) {
    std::mt19937_64 rng(1);
    const auto seq = rb::random_sequence(static_cast<int>(state.range(0)), rng);
    const auto prog = rb::build_rb_program(seq, rb::ideal_calibration(0.208));
    const pulsec::SynthesisConfig cfg;
    for (auto _ : state) benchmark::DoNotOptimize(pulsec::synthesize(pulsec::compile(prog, cfg), cfg));
}
BENCHMARK(BM_CompileRbProgram)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
