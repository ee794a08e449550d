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

#include "cliffsat/peephole.h"

#include <gtest/gtest.h>

#include "cliffsat/oracle.h"
#include "test_support.h"

namespace cliffsat {
namespace {

PeepholeOptions options(Metric m, bool perm = false) {
    PeepholeOptions o;
    o.synthesis.metric = m;
    o.synthesis.allow_permutation = perm;
    o.synthesis.solver = testing::test_solver();
    o.synthesis.encoding = {true, m == Metric::CX_DEPTH, false, true};
    o.synthesis.time_limit = 120;
    return o;
}

Gate t_gate(const Circuit &c, uint32_t q) {
    Circuit tmp = parse_qasm("qreg q[" + std::to_string(c.num_qubits) + "]; t q[" + std::to_string(q) + "];");
    return tmp.gates[0];
}

Gate rzz_gate(const Circuit &c, uint32_t a, uint32_t b) {
    Circuit tmp = parse_qasm("qreg q[" + std::to_string(c.num_qubits) + "]; rzz(0.5) q[" + std::to_string(a) +
                             "],q[" + std::to_string(b) + "];");
    return tmp.gates[0];
}

// Replaces every opaque gate by a Clifford stand-in acting on the same
// qubits, so a rewrite that is valid for arbitrary opaque gates must stay
// valid after the substitution.
Circuit substitute(const Circuit &c) {
    Circuit out(c.num_qubits);
    for (const auto &g : c.gates) {
        if (g.kind != GateKind::OPAQUE) {
            out.append(g);
        } else if (g.qubits.size() == 1) {
            out.append(Gate::h(g.qubits[0]));
            out.append(Gate::s(g.qubits[0]));
        } else {
            out.append(Gate::cz(g.qubits[0], g.qubits[1]));
            out.append(Gate::h(g.qubits[1]));
        }
    }
    return out;
}

Circuit random_mixed(uint32_t n, size_t len, bool two_qubit_opaque, std::mt19937_64 &rng) {
    Circuit c = testing::random_clifford_circuit(n, len, rng);
    Circuit out(n);
    for (const auto &g : c.gates) {
        out.append(g);
        if (rng() % 6 == 0) {
            uint32_t q = rng() % n;
            if (two_qubit_opaque && n > 1 && rng() % 2) {
                uint32_t b = (q + 1) % n;
                out.append(rzz_gate(out, q, b));
            } else {
                out.append(t_gate(out, q));
            }
        }
    }
    return out;
}

void expect_sound(const Circuit &input, const PeepholeResult &res, bool perm) {
    EXPECT_TRUE(equivalent(from_circuit(substitute(res.circuit)),
                           permute_columns(from_circuit(substitute(input)), res.final_map)));
    PeepholeCheck check = verify_rewrite(input, res.circuit, res.final_map, perm);
    EXPECT_TRUE(check.ok) << check.message;
    if (!perm) {
        EXPECT_TRUE(res.final_map.is_identity());
    }
}

TEST(slice_circuit, pure_clifford_is_one_slice) {
    auto slices = slice_circuit(testing::two_cnot_example());
    ASSERT_EQ(slices.size(), 1u);
    EXPECT_EQ(slices[0].kind, SliceKind::CLIFFORD);
    EXPECT_EQ(slices[0].gates.size(), 4u);
    EXPECT_EQ(slices[0].qubit_support, (std::vector<uint32_t>{0, 1}));
}

TEST(slice_circuit, disjoint_opaque_does_not_split) {
    Circuit c(3);
    c.append(Gate::cx(0, 1));
    c.append(t_gate(c, 2));
    c.append(Gate::cx(0, 1));
    auto slices = slice_circuit(c);
    ASSERT_EQ(slices.size(), 2u);
    EXPECT_EQ(slices[0].kind, SliceKind::CLIFFORD);
    EXPECT_EQ(slices[0].gates, (std::vector<Gate>{Gate::cx(0, 1), Gate::cx(0, 1)}));
    EXPECT_EQ(slices[1].kind, SliceKind::OPAQUE_RUN);
    EXPECT_EQ(slices[1].gates.size(), 1u);
}

TEST(slice_circuit, shared_qubit_splits) {
    Circuit c(3);
    c.append(Gate::cx(0, 1));
    c.append(t_gate(c, 1));
    c.append(Gate::cx(0, 1));
    auto slices = slice_circuit(c);
    ASSERT_EQ(slices.size(), 3u);
    EXPECT_EQ(slices[0].kind, SliceKind::CLIFFORD);
    EXPECT_EQ(slices[1].kind, SliceKind::OPAQUE_RUN);
    EXPECT_EQ(slices[2].kind, SliceKind::CLIFFORD);
    EXPECT_EQ(join_slices(c, slices).gates.size(), 3u);
}

TEST(slice_circuit, operandless_opaque_blocks_everything) {
    Circuit c(2);
    c.append(Gate::h(0));
    c.gates.push_back(Gate::opaque("reset_all;", {}));
    c.append(Gate::h(1));
    auto slices = slice_circuit(c);
    ASSERT_EQ(slices.size(), 3u);
    EXPECT_EQ(slices[2].gates, std::vector<Gate>{Gate::h(1)});
}

TEST(slice_circuit, join_preserves_semantics) {
    std::mt19937_64 rng(51);
    for (int trial = 0; trial < 30; trial++) {
        Circuit c = random_mixed(4, 30, true, rng);
        auto slices = slice_circuit(c);
        Circuit joined = join_slices(c, slices);
        EXPECT_EQ(joined.gates.size(), c.gates.size());
        EXPECT_TRUE(equivalent(from_circuit(substitute(joined)), from_circuit(substitute(c))));
        for (size_t k = 1; k < slices.size(); k++) {
            EXPECT_NE(slices[k].kind, slices[k - 1].kind);
        }
    }
}

TEST(optimize_circuit, two_cnot_example) {
    PeepholeResult r = optimize_circuit(testing::two_cnot_example(), options(Metric::CX_COUNT));
    EXPECT_EQ(compute_metrics(r.circuit).cx_count, 1u);
    ASSERT_EQ(r.slices.size(), 1u);
    EXPECT_TRUE(r.slices[0].replaced);
    EXPECT_EQ(r.slices[0].status, "OPTIMAL");
    expect_sound(testing::two_cnot_example(), r, false);
}

TEST(optimize_circuit, opaque_only_is_unchanged) {
    Circuit c(2);
    c.append(t_gate(c, 0));
    c.append(rzz_gate(c, 0, 1));
    PeepholeResult r = optimize_circuit(c, options(Metric::CX_COUNT));
    EXPECT_EQ(r.circuit.gates, c.gates);
    ASSERT_EQ(r.slices.size(), 1u);
    EXPECT_EQ(r.slices[0].status, "OPAQUE");
}

TEST(optimize_circuit, random_mixed_circuits_stay_correct) {
    std::mt19937_64 rng(52);
    for (int trial = 0; trial < 12; trial++) {
        uint32_t n = 2 + trial % 3;
        Circuit c = random_mixed(n, 24, true, rng);
        for (Metric m : {Metric::CX_COUNT, Metric::CX_DEPTH}) {
            PeepholeResult r = optimize_circuit(c, options(m));
            expect_sound(c, r, false);
            Metrics before = compute_metrics(c), after = compute_metrics(r.circuit);
            if (m == Metric::CX_COUNT) {
                EXPECT_LE(after.cx_count, before.cx_count);
            } else {
                EXPECT_LE(after.cx_depth, before.cx_depth);
            }
            for (const auto &s : r.slices) {
                if (s.kind == SliceKind::CLIFFORD && s.status == "OPTIMAL") {
                    uint64_t v = m == Metric::CX_COUNT ? s.after.cx_count : s.after.cx_depth;
                    uint64_t b = m == Metric::CX_COUNT ? s.before.cx_count : s.before.cx_depth;
                    EXPECT_LE(v, b);
                    if (s.replaced) {
                        EXPECT_EQ(v, s.achieved);
                    }
                }
            }
        }
    }
}

TEST(optimize_circuit, relabeling_mode) {
    std::mt19937_64 rng(53);
    for (int trial = 0; trial < 10; trial++) {
        uint32_t n = 2 + trial % 3;
        Circuit c = random_mixed(n, 24, true, rng);
        for (Metric m : {Metric::CX_COUNT, Metric::CX_DEPTH}) {
            PeepholeResult r = optimize_circuit(c, options(m, true));
            expect_sound(c, r, true);
            Metrics before = compute_metrics(c), after = compute_metrics(r.circuit);
            EXPECT_LE(m == Metric::CX_COUNT ? after.cx_count : after.cx_depth,
                      m == Metric::CX_COUNT ? before.cx_count : before.cx_depth);
        }
    }
}

TEST(optimize_circuit, relabeling_moves_opaque_gates) {
    Circuit c(2);
    for (const auto &g : decompose_to_base(Gate::swap(0, 1))) {
        c.append(g);
    }
    c.append(t_gate(c, 0));
    PeepholeResult r = optimize_circuit(c, options(Metric::CX_COUNT, true));
    EXPECT_EQ(r.final_map, Permutation({1, 0}));
    EXPECT_EQ(compute_metrics(r.circuit).cx_count, 0u);
    ASSERT_FALSE(r.circuit.gates.empty());
    EXPECT_EQ(r.circuit.gates.back().label, "t q[1];");
    expect_sound(c, r, true);
}

TEST(optimize_circuit, parallel_jobs_match_serial) {
    std::mt19937_64 rng(54);
    Circuit c = random_mixed(4, 50, false, rng);
    PeepholeOptions serial = options(Metric::CX_COUNT);
    PeepholeOptions parallel = serial;
    parallel.jobs = 4;
    PeepholeResult a = optimize_circuit(c, serial);
    PeepholeResult b = optimize_circuit(c, parallel);
    EXPECT_EQ(a.circuit, b.circuit);
}

TEST(optimize_circuit, rejects_relabeling_with_coupling_and_wide_opaque) {
    Circuit c(3);
    c.append(Gate::cx(0, 1));
    c.append(rzz_gate(c, 1, 2));
    PeepholeOptions o = options(Metric::CX_COUNT, true);
    o.synthesis.coupling = builtin_topology("line", 3);
    EXPECT_THROW(optimize_circuit(c, o), std::invalid_argument);
}

TEST(optimize_circuit, off_coupling_slices_are_rerouted) {
    Circuit c(4, {Gate::h(0), Gate::cx(0, 3), Gate::s(3)});
    CouplingGraph line = builtin_topology("line", 4);
    for (bool perm : {false, true}) {
        PeepholeOptions o = options(Metric::CX_COUNT, perm);
        o.synthesis.coupling = line;
        PeepholeResult r = optimize_circuit(c, o);
        expect_sound(c, r, perm);
        EXPECT_FALSE(r.slices[0].coupling_violation);
        EXPECT_TRUE(r.slices[0].replaced);
        for (const auto &g : r.circuit.gates) {
            if (g.kind == GateKind::CX) {
                EXPECT_TRUE(line.connected(g.qubits[0], g.qubits[1])) << g.str();
            }
        }
        int want = min_cx_count(from_circuit(c), line, perm);
        EXPECT_EQ(static_cast<int>(compute_metrics(r.circuit).cx_count), want);
    }
}

TEST(optimize_circuit, expired_deadline_keeps_input) {
    std::mt19937_64 rng(55);
    Circuit c = random_mixed(3, 30, false, rng);
    PeepholeOptions o = options(Metric::CX_COUNT);
    o.deadline = std::chrono::steady_clock::now() - std::chrono::seconds(1);
    PeepholeResult r = optimize_circuit(c, o);
    EXPECT_EQ(r.circuit.gates, join_slices(c, slice_circuit(c)).gates);
    for (const auto &s : r.slices) {
        if (s.kind == SliceKind::CLIFFORD) {
            EXPECT_EQ(s.status, "TIMEOUT_NO_RESULT");
            EXPECT_FALSE(s.replaced);
        }
    }
}

TEST(optimize_circuit, backward_search) {
    std::mt19937_64 rng(56);
    Circuit c = random_mixed(3, 30, false, rng);
    PeepholeOptions o = options(Metric::CX_COUNT);
    o.synthesis.search = SearchStrategy::BACKWARD;
    o.synthesis.certify = true;
    PeepholeResult r = optimize_circuit(c, o);
    expect_sound(c, r, false);
    for (const auto &s : r.slices) {
        if (s.kind == SliceKind::CLIFFORD) {
            EXPECT_EQ(s.status, "OPTIMAL");
        }
    }
}

TEST(optimize_circuit, idempotent_on_its_output) {
    std::mt19937_64 rng(57);
    Circuit c = random_mixed(3, 30, false, rng);
    PeepholeResult once = optimize_circuit(c, options(Metric::CX_COUNT));
    PeepholeResult twice = optimize_circuit(once.circuit, options(Metric::CX_COUNT));
    EXPECT_EQ(compute_metrics(twice.circuit).cx_count, compute_metrics(once.circuit).cx_count);
}

TEST(verify_rewrite, detects_tampering) {
    std::mt19937_64 rng(58);
    Circuit c = random_mixed(3, 30, false, rng);
    PeepholeResult r = optimize_circuit(c, options(Metric::CX_COUNT));
    ASSERT_TRUE(verify_rewrite(c, r.circuit, r.final_map, false).ok);

    size_t opaque = 0;
    while (opaque < r.circuit.gates.size() && r.circuit.gates[opaque].is_clifford()) {
        opaque++;
    }
    ASSERT_LT(opaque, r.circuit.gates.size());

    Circuit dropped = r.circuit;
    dropped.gates.erase(dropped.gates.begin() + static_cast<std::ptrdiff_t>(opaque));
    EXPECT_FALSE(verify_rewrite(c, dropped, r.final_map, false).ok);

    Circuit moved = r.circuit;
    uint32_t q = moved.gates[opaque].qubits[0];
    std::vector<uint32_t> shift{1, 2, 0};
    moved.gates[opaque] = moved.relabel(moved.gates[opaque], shift);
    EXPECT_NE(moved.gates[opaque].qubits[0], q);
    EXPECT_FALSE(verify_rewrite(c, moved, r.final_map, false).ok);

    Circuit extra = r.circuit;
    extra.gates.insert(extra.gates.begin(), Gate::x(0));
    EXPECT_FALSE(verify_rewrite(c, extra, r.final_map, false).ok);

    EXPECT_FALSE(verify_rewrite(c, r.circuit, Permutation({1, 0, 2}), true).ok);
    Circuit swapped = c;
    swapped.gates.push_back(Gate::swap(0, 1));
    EXPECT_FALSE(verify_rewrite(c, swapped, Permutation::identity(3), false).ok);
}

TEST(verify_rewrite, accepts_relabeled_segments) {
    Circuit c(2);
    c.append(Gate::swap(0, 1));
    c.append(t_gate(c, 0));
    Circuit out(2);
    out.append(t_gate(out, 1));
    EXPECT_TRUE(verify_rewrite(c, out, Permutation({1, 0}), true).ok);
    EXPECT_FALSE(verify_rewrite(c, out, Permutation({1, 0}), false).ok);
    EXPECT_FALSE(verify_rewrite(c, out, Permutation::identity(2), true).ok);
}

}  // namespace
}  // namespace cliffsat
