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

#include "cliffsat/synthesizer.h"

#include <gtest/gtest.h>

#include "cliffsat/errors.h"
#include "cliffsat/oracle.h"
#include "test_support.h"

namespace cliffsat {
namespace {

SynthesisOptions options(Metric m, bool perm = false) {
    SynthesisOptions o;
    o.metric = m;
    o.allow_permutation = perm;
    o.solver = testing::test_solver();
    o.encoding.gate_ordering = true;
    o.encoding.cycle_breaking = m == Metric::CX_DEPTH;
    o.encoding.flip_aux_vars = true;
    o.time_limit = 120;
    return o;
}

std::vector<Gate> pauli_prefix(const Circuit &c) {
    std::vector<Gate> out;
    for (const auto &g : c.gates) {
        if (g.kind != GateKind::X && g.kind != GateKind::Y && g.kind != GateKind::Z) {
            break;
        }
        out.push_back(g);
    }
    return out;
}

Circuit without_prefix(const Circuit &c) {
    Circuit body(c.num_qubits);
    size_t k = pauli_prefix(c).size();
    body.gates.assign(c.gates.begin() + static_cast<std::ptrdiff_t>(k), c.gates.end());
    return body;
}

void expect_valid(const Circuit &input, const SynthesisOutcome &out) {
    ASSERT_TRUE(out.circuit);
    EXPECT_TRUE(verify(input, *out.circuit, out.permutation));
    EXPECT_TRUE(equivalent(from_circuit(*out.circuit), permute_columns(from_circuit(input), out.permutation)));
}

TEST(synthesize, two_cnot_example) {
    Circuit input = testing::two_cnot_example();
    Tableau target = from_circuit(input);
    SynthesisOutcome out = synthesize(target, options(Metric::CX_COUNT));
    EXPECT_EQ(out.status, SynthesisStatus::OPTIMAL);
    EXPECT_EQ(out.achieved, 1u);
    ASSERT_TRUE(out.circuit);
    EXPECT_EQ(compute_metrics(*out.circuit).cx_count, 1u);
    EXPECT_TRUE(equivalent(from_circuit(*out.circuit), target));
    Circuit body = without_prefix(*out.circuit);
    EXPECT_EQ(pauli_prefix(*out.circuit), recover_phase(from_circuit(body), target));
    Circuit normal_form(2, {Gate::s(1), Gate::h(1), Gate::cx(0, 1), Gate::s(0), Gate::h(1)});
    if (body == normal_form) {
        EXPECT_EQ(pauli_prefix(*out.circuit), (std::vector<Gate>{Gate::z(0), Gate::z(1), Gate::x(1)}));
    }
    ASSERT_EQ(out.solve_log.size(), 2u);
    EXPECT_EQ(out.solve_log[0].status, SolveStatus::UNSAT);
    EXPECT_EQ(out.solve_log[1].status, SolveStatus::SAT);
}

TEST(synthesize, identity_target) {
    SynthesisOutcome out = synthesize(initial_tableau(3), options(Metric::CX_COUNT));
    EXPECT_EQ(out.status, SynthesisStatus::OPTIMAL);
    EXPECT_EQ(out.achieved, 0u);
    ASSERT_TRUE(out.circuit);
    EXPECT_TRUE(out.circuit->gates.empty());
}

TEST(synthesize, swap) {
    Circuit swap = decompose_circuit(Circuit(2, {Gate::swap(0, 1)}));
    Tableau t = from_circuit(swap);
    EXPECT_EQ(min_cx_count(t), 3);
    SynthesisOutcome out = synthesize(t, options(Metric::CX_COUNT));
    EXPECT_EQ(out.achieved, 3u);
    expect_valid(swap, out);
    SynthesisOutcome perm = synthesize(t, options(Metric::CX_COUNT, true));
    EXPECT_EQ(perm.achieved, 0u);
    EXPECT_EQ(perm.permutation, Permutation({1, 0}));
    expect_valid(swap, perm);
    SynthesisOutcome depth = synthesize(t, options(Metric::CX_DEPTH));
    EXPECT_EQ(depth.achieved, 3u);
}

TEST(synthesize, matches_oracle_on_random_targets) {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 16; trial++) {
        uint32_t n = 2 + trial % 2;
        Circuit c = testing::random_clifford_circuit(n, 30, rng);
        Tableau t = from_circuit(c);
        for (Metric m : {Metric::CX_COUNT, Metric::CX_DEPTH}) {
            for (bool perm : {false, true}) {
                SynthesisOutcome out = synthesize(t, options(m, perm));
                int want = m == Metric::CX_COUNT ? min_cx_count(t, std::nullopt, perm)
                                                 : min_cx_depth(t, std::nullopt, perm);
                EXPECT_EQ(out.status, SynthesisStatus::OPTIMAL);
                EXPECT_EQ(static_cast<int>(out.achieved), want);
                expect_valid(c, out);
                Metrics got = compute_metrics(*out.circuit);
                EXPECT_EQ(static_cast<int>(m == Metric::CX_COUNT ? got.cx_count : got.cx_depth), want);
            }
        }
    }
}

TEST(synthesize, four_qubit_depth_below_count) {
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 2; trial++) {
        Circuit c = testing::random_clifford_circuit(4, 12, rng);
        Tableau t = from_circuit(c);
        SynthesisOutcome count = synthesize(t, options(Metric::CX_COUNT));
        SynthesisOutcome depth = synthesize(t, options(Metric::CX_DEPTH));
        EXPECT_EQ(static_cast<int>(count.achieved), min_cx_count(t));
        EXPECT_EQ(static_cast<int>(depth.achieved), min_cx_depth(t));
        EXPECT_LE(depth.achieved, count.achieved);
        expect_valid(c, count);
        expect_valid(c, depth);
    }
}

TEST(synthesize, coupling_on_line) {
    Circuit c(4, {Gate::h(0), Gate::cx(0, 3), Gate::s(3), Gate::cx(3, 1)});
    Tableau t = from_circuit(c);
    CouplingGraph line = builtin_topology("line", 4);
    for (Metric m : {Metric::CX_COUNT, Metric::CX_DEPTH}) {
        SynthesisOptions o = options(m);
        o.coupling = line;
        SynthesisOutcome out = synthesize(t, o);
        expect_valid(c, out);
        int want = m == Metric::CX_COUNT ? min_cx_count(t, line) : min_cx_depth(t, line);
        EXPECT_EQ(static_cast<int>(out.achieved), want);
        for (const auto &g : out.circuit->gates) {
            if (g.kind == GateKind::CX) {
                EXPECT_TRUE(line.connected(g.qubits[0], g.qubits[1])) << g.str();
            }
        }
    }
}

TEST(synthesize, coupling_soundness_random) {
    std::mt19937_64 rng(43);
    std::vector<CouplingGraph> graphs{builtin_topology("line", 3), builtin_topology("ring", 4), grid_topology(2, 2)};
    for (const auto &g : graphs) {
        for (int trial = 0; trial < 3; trial++) {
            Circuit c = testing::random_clifford_circuit(g.num_qubits(), 10, rng);
            for (bool perm : {false, true}) {
                SynthesisOptions o = options(Metric::CX_COUNT, perm);
                o.coupling = g;
                SynthesisOutcome out = synthesize(from_circuit(c), o);
                expect_valid(c, out);
                EXPECT_EQ(static_cast<int>(out.achieved), min_cx_count(from_circuit(c), g, perm));
                for (const auto &gate : out.circuit->gates) {
                    if (gate.kind == GateKind::CX) {
                        EXPECT_TRUE(g.connected(gate.qubits[0], gate.qubits[1]));
                    }
                }
            }
        }
    }
}

TEST(synthesize, backward_search) {
    std::mt19937_64 rng(44);
    for (int trial = 0; trial < 6; trial++) {
        Circuit c = testing::random_clifford_circuit(3, 30, rng);
        Tableau t = from_circuit(c);
        SynthesisOptions o = options(Metric::CX_COUNT);
        o.search = SearchStrategy::BACKWARD;
        o.start_bound = static_cast<uint32_t>(compute_metrics(c).cx_count);
        SynthesisOutcome out = synthesize(t, o);
        expect_valid(c, out);
        int opt = min_cx_count(t);
        EXPECT_GE(static_cast<int>(out.achieved), opt);
        EXPECT_LE(out.achieved, *o.start_bound);
        EXPECT_EQ(out.status, out.achieved == 0 ? SynthesisStatus::OPTIMAL : SynthesisStatus::BEST_FOUND);
        EXPECT_EQ(out.solve_log.front().d, *o.start_bound);

        o.certify = true;
        SynthesisOutcome cert = synthesize(t, o);
        expect_valid(c, cert);
        EXPECT_EQ(cert.status, SynthesisStatus::OPTIMAL);
        EXPECT_EQ(static_cast<int>(cert.achieved), opt);
    }
}

TEST(synthesize, backward_needs_start_bound) {
    SynthesisOptions o = options(Metric::CX_COUNT);
    o.search = SearchStrategy::BACKWARD;
    EXPECT_THROW(synthesize(initial_tableau(2), o), std::invalid_argument);
}

TEST(synthesize, unreachable_target_stops_at_max_makespan) {
    SynthesisOptions o = options(Metric::CX_COUNT);
    o.coupling = CouplingGraph(3);
    o.max_makespan = 2;
    SynthesisOutcome out = synthesize(from_circuit(Circuit(3, {Gate::cx(0, 1)})), o);
    EXPECT_EQ(out.status, SynthesisStatus::TIMEOUT_NO_RESULT);
    EXPECT_FALSE(out.circuit);
    EXPECT_EQ(out.solve_log.size(), 3u);
}

TEST(synthesize, time_limit) {
    std::mt19937_64 rng(45);
    SynthesisOptions o = options(Metric::CX_COUNT);
    o.time_limit = 0;
    SynthesisOutcome out = synthesize(from_circuit(testing::random_clifford_circuit(4, 40, rng)), o);
    EXPECT_EQ(out.status, SynthesisStatus::TIMEOUT_NO_RESULT);
    EXPECT_FALSE(out.circuit);
}

TEST(synthesize, callbacks) {
    SynthesisOptions o = options(Metric::CX_COUNT);
    int formulas = 0;
    std::vector<uint32_t> ds;
    o.on_formula = [&](uint32_t, const Encoding &enc) {
        formulas++;
        EXPECT_GT(enc.formula.num_clauses(), 0u);
    };
    o.on_solve = [&](const SolveLogEntry &e) { ds.push_back(e.d); };
    synthesize(from_circuit(testing::two_cnot_example()), o);
    EXPECT_EQ(formulas, 2);
    EXPECT_EQ(ds, (std::vector<uint32_t>{0, 1}));
}

TEST(synthesize, solver_errors_propagate) {
    SynthesisOptions o = options(Metric::CX_COUNT);
    o.solver.command = {"/nonexistent/solver"};
    EXPECT_THROW(synthesize(from_circuit(testing::two_cnot_example()), o), EnvironmentError);
}

TEST(verify, examples) {
    Circuit input = testing::two_cnot_example();
    Circuit fixed(2, {Gate::z(0), Gate::z(1), Gate::x(1), Gate::s(1), Gate::h(1), Gate::cx(0, 1), Gate::s(0),
                      Gate::h(1)});
    Circuit bare(2, {Gate::s(1), Gate::h(1), Gate::cx(0, 1), Gate::s(0), Gate::h(1)});
    EXPECT_TRUE(verify(input, fixed, Permutation::identity(2)));
    EXPECT_TRUE(verify(input, input, Permutation::identity(2)));
    EXPECT_FALSE(verify(input, bare, Permutation::identity(2)));
    EXPECT_THROW(verify(input, Circuit(3), Permutation::identity(2)), std::invalid_argument);
    EXPECT_THROW(verify(Circuit(1, {Gate::opaque("t q[0];", {0})}), Circuit(1), Permutation::identity(1)),
                 UnsupportedGateError);
}

TEST(search, names) {
    EXPECT_EQ(parse_search("forward"), SearchStrategy::FORWARD);
    EXPECT_EQ(parse_search("backward"), SearchStrategy::BACKWARD);
    EXPECT_THROW(parse_search("sideways"), std::invalid_argument);
    EXPECT_STREQ(synthesis_status_name(SynthesisStatus::BEST_FOUND), "BEST_FOUND");
}

}  // namespace
}  // namespace cliffsat
