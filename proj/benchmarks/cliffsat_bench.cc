// Copyright 2026 The cliffsat Authors
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

#include <random>

#include "cliffsat/circuit.h"
#include "cliffsat/encoder.h"
#include "cliffsat/oracle.h"
#include "cliffsat/peephole.h"
#include "cliffsat/tableau.h"

namespace cliffsat {
namespace {

Circuit random_circuit(uint32_t n, size_t len, uint64_t seed) {
    std::mt19937_64 rng(seed);
    Circuit c(n);
    for (size_t k = 0; k < len; k++) {
        uint32_t a = rng() % n;
        switch (rng() % 3) {
            case 0:
                c.append(Gate::h(a));
                break;
            case 1:
                c.append(Gate::s(a));
                break;
            default: {
                uint32_t b = (a + 1 + rng() % (n - 1)) % n;
                c.append(Gate::cx(a, b));
            }
        }
    }
    return c;
}

void BM_simulate(benchmark::State &state) {
    uint32_t n = static_cast<uint32_t>(state.range(0));
    Circuit c = random_circuit(n, 1000, 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(from_circuit(c));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(c.gates.size()));
}
BENCHMARK(BM_simulate)->Arg(4)->Arg(16)->Arg(64)->Arg(127);

void BM_encode(benchmark::State &state) {
    uint32_t n = static_cast<uint32_t>(state.range(0));
    uint32_t d = static_cast<uint32_t>(state.range(1));
    Tableau target = from_circuit(random_circuit(n, 40 * n, 2));
    SynthesisSpec spec{target, Metric::CX_COUNT, d, false, std::nullopt, {true, false, false, true}};
    for (auto _ : state) {
        Encoding e = encode(spec);
        benchmark::DoNotOptimize(e.formula.num_clauses());
    }
}
BENCHMARK(BM_encode)->Args({3, 4})->Args({5, 9})->Args({8, 16})->Unit(benchmark::kMicrosecond);

void BM_encode_depth_permuted(benchmark::State &state) {
    uint32_t n = static_cast<uint32_t>(state.range(0));
    Tableau target = from_circuit(random_circuit(n, 40 * n, 3));
    SynthesisSpec spec{target, Metric::CX_DEPTH, 4, true, std::nullopt, {true, true, false, true}};
    for (auto _ : state) {
        Encoding e = encode(spec);
        benchmark::DoNotOptimize(e.formula.num_clauses());
    }
}
BENCHMARK(BM_encode_depth_permuted)->Arg(4)->Arg(6)->Unit(benchmark::kMicrosecond);

void BM_dimacs(benchmark::State &state) {
    Tableau target = from_circuit(random_circuit(5, 200, 4));
    Encoding e = encode({target, Metric::CX_COUNT, 9, false, std::nullopt, {true, false, false, true}});
    for (auto _ : state) {
        benchmark::DoNotOptimize(e.formula.to_dimacs());
    }
}
BENCHMARK(BM_dimacs)->Unit(benchmark::kMicrosecond);

void BM_oracle_count(benchmark::State &state) {
    uint32_t n = static_cast<uint32_t>(state.range(0));
    Tableau target = from_circuit(random_circuit(n, 60, 5));
    for (auto _ : state) {
        benchmark::DoNotOptimize(min_cx_count(target));
    }
}
BENCHMARK(BM_oracle_count)->Arg(2)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_slice(benchmark::State &state) {
    Circuit c = random_circuit(20, 5000, 6);
    std::mt19937_64 rng(7);
    Circuit mixed(20);
    for (const auto &g : c.gates) {
        mixed.append(g);
        if (rng() % 10 == 0) {
            mixed.append(Gate::opaque("t " + mixed.operand(g.qubits[0]) + ";", {g.qubits[0]}));
        }
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(slice_circuit(mixed));
    }
}
BENCHMARK(BM_slice)->Unit(benchmark::kMicrosecond);

}  // namespace
}  // namespace cliffsat

BENCHMARK_MAIN();
