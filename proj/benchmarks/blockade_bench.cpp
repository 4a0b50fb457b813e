// Copyright 2026 The Blockade Authors
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

#include <numbers>

#include "blockade/basis.hpp"
#include "blockade/dynamics.hpp"
#include "blockade/protocols.hpp"

using namespace blockade;

namespace {

void evolve_protocol(benchmark::State &state, ProtocolName name) {
    ProtocolSpec spec;
    spec.name = name;
    spec.n_atoms = {static_cast<int>(state.range(0))};
    const BuiltProtocol b = build_protocol(spec);
    const HamiltonianModel model(b.basis, b.schedule);
    for (auto _ : state) {
        auto traj = evolve(model, b.initial, b.schedule.window(), Sampling::events());
        benchmark::DoNotOptimize(traj.final_state().data());
    }
}

void BM_ArpSingle(benchmark::State &state) { evolve_protocol(state, ProtocolName::arp_single); }
void BM_StirapSingle(benchmark::State &state) { evolve_protocol(state, ProtocolName::stirap_single); }
void BM_DoubleStirap(benchmark::State &state) { evolve_protocol(state, ProtocolName::double_stirap); }

void BM_EnumerateBasis(benchmark::State &state) {
    const LevelScheme scheme({Level::g0, Level::g1, Level::e, Level::r0, Level::r1});
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto basis = enumerate_basis(scheme, n, EnsembleSpec{scheme, n}, true);
        benchmark::DoNotOptimize(basis.dim());
    }
}

void BM_HamiltonianApply(benchmark::State &state) {
    ProtocolSpec spec;
    spec.name = ProtocolName::mw_cnot;
    spec.n_atoms = {static_cast<int>(state.range(0)), static_cast<int>(state.range(0))};
    const BuiltProtocol b = build_protocol(spec);
    const HamiltonianModel model(b.basis, b.schedule);
    const double t = 0.5 * (b.schedule.window().start + b.schedule.window().end);
    Eigen::VectorXcd out(b.basis.dim());
    for (auto _ : state) {
        model.derivative(t, t, b.initial.amplitudes, out);
        benchmark::DoNotOptimize(out.data());
    }
    state.counters["dim"] = static_cast<double>(b.basis.dim());
}

}  // namespace

BENCHMARK(BM_ArpSingle)->Arg(1)->Arg(5)->Arg(15)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_StirapSingle)->Arg(1)->Arg(5)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DoubleStirap)->Arg(2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EnumerateBasis)->Arg(2)->Arg(8);
BENCHMARK(BM_HamiltonianApply)->Arg(1)->Arg(4);

BENCHMARK_MAIN();
