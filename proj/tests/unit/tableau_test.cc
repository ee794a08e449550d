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

#include "cliffsat/tableau.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "cliffsat/errors.h"
#include "test_support.h"

namespace cliffsat {
namespace {

using testing::RefSymplectic;

struct Rows {
    std::vector<std::vector<int>> x, z;
    std::vector<int> r;
};

void expect_tableau(const Tableau &t, const Rows &want) {
    size_t n = t.num_qubits();
    ASSERT_EQ(want.x.size(), 2 * n);
    for (size_t i = 0; i < 2 * n; i++) {
        for (size_t a = 0; a < n; a++) {
            EXPECT_EQ(t.x(i, a), want.x[i][a] != 0) << "x row " << i << " col " << a;
            EXPECT_EQ(t.z(i, a), want.z[i][a] != 0) << "z row " << i << " col " << a;
        }
        EXPECT_EQ(t.r(i), want.r[i] != 0) << "r row " << i;
    }
}

// The hand-computed tableau of cx q0,q1; s q1; cx q0,q1; x q1.
const Rows kTwoCnotTarget{{{1, 0}, {0, 1}, {0, 0}, {0, 0}}, {{1, 1}, {1, 1}, {1, 0}, {0, 1}}, {1, 1, 0, 1}};

Circuit one_cnot_normal_form() {
    return Circuit(2, {Gate::s(1), Gate::h(1), Gate::cx(0, 1), Gate::s(0), Gate::h(1)});
}

Circuit phase_fixed_form() {
    Circuit c(2, {Gate::z(0), Gate::z(1), Gate::x(1)});
    for (const auto &g : one_cnot_normal_form().gates) {
        c.append(g);
    }
    return c;
}

void expect_matches_reference(const Tableau &t, const RefSymplectic &ref) {
    size_t n = t.num_qubits();
    for (size_t i = 0; i < 2 * n; i++) {
        for (size_t a = 0; a < n; a++) {
            ASSERT_EQ(t.x(i, a), ref.rows[i][a] != 0);
            ASSERT_EQ(t.z(i, a), ref.rows[i][n + a] != 0);
        }
    }
}

TEST(initial_tableau, two_qubits) {
    expect_tableau(initial_tableau(2), {{{1, 0}, {0, 1}, {0, 0}, {0, 0}}, {{0, 0}, {0, 0}, {1, 0}, {0, 1}}, {0, 0, 0, 0}});
}

TEST(initial_tableau, one_qubit) {
    expect_tableau(initial_tableau(1), {{{1}, {0}}, {{0}, {1}}, {0, 0}});
}

TEST(initial_tableau, three_qubits) {
    Tableau t = initial_tableau(3);
    for (size_t i = 0; i < 3; i++) {
        for (size_t a = 0; a < 3; a++) {
            EXPECT_EQ(t.x(i, a), i == a);
            EXPECT_EQ(t.z(i + 3, a), i == a);
            EXPECT_FALSE(t.z(i, a));
            EXPECT_FALSE(t.x(i + 3, a));
        }
    }
    EXPECT_TRUE(t.is_symplectic());
    EXPECT_THROW(Tableau(0), std::invalid_argument);
}

TEST(apply_gate, cx_on_identity) {
    Tableau t = apply_gate(initial_tableau(2), Gate::cx(0, 1));
    expect_tableau(t, {{{1, 1}, {0, 1}, {0, 0}, {0, 0}}, {{0, 0}, {0, 0}, {1, 0}, {1, 1}}, {0, 0, 0, 0}});
}

TEST(apply_gate, two_cnot_example_target) {
    expect_tableau(from_circuit(testing::two_cnot_example()), kTwoCnotTarget);
}

TEST(apply_gate, phase_rules_single_qubit) {
    // Y = XZ up to phase: H S S H sends X -> X, Z -> -Z.
    Tableau t = from_circuit(Circuit(1, {Gate::h(0), Gate::s(0), Gate::s(0), Gate::h(0)}));
    expect_tableau(t, {{{1}, {0}}, {{0}, {1}}, {0, 1}});
    Tableau y = from_circuit(Circuit(1, {Gate::y(0)}));
    expect_tableau(y, {{{1}, {0}}, {{0}, {1}}, {1, 1}});
    Tableau s = from_circuit(Circuit(1, {Gate::s(0), Gate::s(0)}));
    expect_tableau(s, {{{1}, {0}}, {{0}, {1}}, {1, 0}});
}

TEST(apply_gate, involutions) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 50; trial++) {
        uint32_t n = 2 + rng() % 4;
        Tableau t = from_circuit(testing::random_clifford_circuit(n, 30, rng));
        uint32_t a = rng() % n;
        uint32_t b = (a + 1 + rng() % (n - 1)) % n;
        for (const Gate &g : {Gate::h(a), Gate::x(a), Gate::y(a), Gate::z(a), Gate::cx(a, b), Gate::cz(a, b),
                              Gate::swap(a, b)}) {
            EXPECT_EQ(apply_gate(apply_gate(t, g), g), t) << g.str();
        }
        Tableau s4 = t;
        for (int k = 0; k < 4; k++) {
            s4.s(a);
        }
        EXPECT_EQ(s4, t);
        Tableau sdg = apply_gate(apply_gate(t, Gate::s(a)), Gate::sdg(a));
        EXPECT_EQ(sdg, t);
    }
}

TEST(apply_gate, hsh_equals_shs_on_xz) {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 30; trial++) {
        uint32_t n = 1 + rng() % 4;
        Tableau t = from_circuit(testing::random_clifford_circuit(n, 20, rng));
        uint32_t a = rng() % n;
        Tableau hsh = run_circuit(Circuit(n, {Gate::h(a), Gate::s(a), Gate::h(a)}), t);
        Tableau shs = run_circuit(Circuit(n, {Gate::s(a), Gate::h(a), Gate::s(a)}), t);
        EXPECT_TRUE(equivalent_xz(hsh, shs));
    }
}

TEST(apply_gate, agrees_with_reference_model) {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 100; trial++) {
        uint32_t n = 1 + rng() % 5;
        Circuit c = testing::random_clifford_circuit(n, 40, rng);
        c.append(Gate::sdg(0));
        if (n > 1) {
            c.append(Gate::cz(0, n - 1));
            c.append(Gate::swap(n - 1, 0));
        }
        Tableau t = from_circuit(c);
        EXPECT_TRUE(t.is_symplectic());
        expect_matches_reference(t, RefSymplectic::of(c));
    }
}

TEST(apply_gate, errors) {
    Tableau t(2);
    EXPECT_THROW(t.apply(Gate::opaque("t q[0];", {0})), UnsupportedGateError);
    EXPECT_THROW(t.apply(Gate::h(2)), RangeError);
}

TEST(from_circuit, examples) {
    EXPECT_EQ(from_circuit(Circuit(2)), initial_tableau(2));
    Tableau nf = from_circuit(one_cnot_normal_form());
    Tableau target = from_circuit(testing::two_cnot_example());
    EXPECT_TRUE(equivalent_xz(nf, target));
    EXPECT_FALSE(equivalent(nf, target));
}

TEST(run_circuit, composes) {
    std::mt19937_64 rng(14);
    Circuit a = testing::random_clifford_circuit(3, 20, rng);
    Circuit b = testing::random_clifford_circuit(3, 20, rng);
    Circuit ab = a;
    for (const auto &g : b.gates) {
        ab.append(g);
    }
    EXPECT_EQ(run_circuit(b, from_circuit(a)), from_circuit(ab));
}

TEST(equivalent, examples) {
    Tableau target = from_circuit(testing::two_cnot_example());
    EXPECT_TRUE(equivalent(target, target));
    EXPECT_FALSE(equivalent(target, from_circuit(one_cnot_normal_form())));
    EXPECT_TRUE(equivalent(target, from_circuit(phase_fixed_form())));
    EXPECT_THROW(equivalent(Tableau(2), Tableau(3)), std::invalid_argument);
}

TEST(equivalent_xz, examples) {
    Tableau target = from_circuit(testing::two_cnot_example());
    EXPECT_TRUE(equivalent_xz(target, from_circuit(one_cnot_normal_form())));
    EXPECT_TRUE(equivalent_xz(target, apply_gate(target, Gate::x(0))));
    EXPECT_FALSE(equivalent_xz(initial_tableau(2), target));
}

TEST(recover_phase, examples) {
    Tableau synth = from_circuit(one_cnot_normal_form());
    for (size_t i = 0; i < 4; i++) {
        ASSERT_FALSE(synth.r(i));
    }
    Tableau target = from_circuit(testing::two_cnot_example());
    EXPECT_EQ(recover_phase(synth, target), (std::vector<Gate>{Gate::z(0), Gate::z(1), Gate::x(1)}));
    EXPECT_TRUE(recover_phase(target, target).empty());

    Tableau other = synth;
    other.set_r(2, true);
    other.set_r(3, true);
    auto prefix = recover_phase(synth, other);
    EXPECT_EQ(prefix, (std::vector<Gate>{Gate::x(0), Gate::x(1)}));
    Circuit fixed(2, prefix);
    for (const auto &g : one_cnot_normal_form().gates) {
        fixed.append(g);
    }
    EXPECT_EQ(from_circuit(fixed), other);
}

TEST(recover_phase, random_targets) {
    std::mt19937_64 rng(15);
    for (int trial = 0; trial < 100; trial++) {
        uint32_t n = 1 + rng() % 5;
        Circuit c = testing::random_clifford_circuit(n, 30, rng);
        Circuit stripped(n);
        for (const auto &g : c.gates) {
            if (g.kind != GateKind::X && g.kind != GateKind::Y && g.kind != GateKind::Z) {
                stripped.append(g);
            }
        }
        Tableau target = from_circuit(c);
        Circuit fixed = prepend_phase_fix(stripped, target);
        EXPECT_TRUE(equivalent(from_circuit(fixed), target));
    }
}

TEST(prepend_phase_fix, rejects_wrong_xz) {
    EXPECT_THROW(prepend_phase_fix(Circuit(2, {Gate::h(0)}), initial_tableau(2)), std::invalid_argument);
}

TEST(permute_columns, examples) {
    Tableau t = from_circuit(testing::two_cnot_example());
    EXPECT_EQ(permute_columns(t, Permutation::identity(2)), t);

    Permutation swap({1, 0});
    Tableau moved = permute_columns(initial_tableau(2), swap);
    EXPECT_TRUE(moved.is_symplectic());
    EXPECT_TRUE(moved.x(0, 1) && moved.x(1, 0) && !moved.x(0, 0) && !moved.x(1, 1));
    EXPECT_TRUE(moved.z(2, 1) && moved.z(3, 0));

    Tableau cx = from_circuit(Circuit(2, {Gate::cx(0, 1)}));
    Tableau relabeled_wires = from_circuit(Circuit(2, {Gate::swap(0, 1), Gate::cx(1, 0)}));
    EXPECT_TRUE(equivalent(permute_columns(cx, swap), relabeled_wires));
}

TEST(permute_columns, matches_output_relabeling) {
    std::mt19937_64 rng(16);
    for (int trial = 0; trial < 50; trial++) {
        uint32_t n = 2 + rng() % 3;
        Circuit c = testing::random_clifford_circuit(n, 30, rng);
        std::vector<uint32_t> p(n);
        std::iota(p.begin(), p.end(), 0);
        std::shuffle(p.begin(), p.end(), rng);
        // Physically move logical qubit a onto wire p[a] with swaps at the end.
        Circuit moved = c;
        std::vector<uint32_t> at(n), holder(n);
        std::iota(at.begin(), at.end(), 0);
        std::iota(holder.begin(), holder.end(), 0);
        for (uint32_t a = 0; a < n; a++) {
            uint32_t from = at[a], to = p[a];
            if (from != to) {
                moved.append(Gate::swap(from, to));
                uint32_t other = holder[to];
                std::swap(holder[from], holder[to]);
                at[other] = from;
                at[a] = to;
            }
        }
        EXPECT_TRUE(equivalent(permute_columns(from_circuit(c), Permutation(p)), from_circuit(moved)));
        expect_matches_reference(permute_columns(from_circuit(c), Permutation(p)),
                                 RefSymplectic::of(c).relabeled(p));
    }
}

TEST(inverse_xz, composes_to_identity) {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 50; trial++) {
        uint32_t n = 1 + rng() % 5;
        Circuit c = testing::random_clifford_circuit(n, 30, rng);
        Tableau inv = inverse_xz(from_circuit(c));
        EXPECT_TRUE(equivalent_xz(run_circuit(reverse_xz(c), initial_tableau(n)), inv));
        EXPECT_TRUE(equivalent_xz(run_circuit(reverse_xz(c), from_circuit(c)), initial_tableau(n)));
        EXPECT_TRUE(equivalent_xz(inverse_xz(inv), from_circuit(c)));
    }
}

TEST(permutation, basics) {
    Permutation p({2, 0, 1});
    EXPECT_FALSE(p.is_identity());
    EXPECT_TRUE(p.after(p.inverse()).is_identity());
    EXPECT_EQ(p.after(p)(0), 1u);
    EXPECT_THROW(Permutation({0, 0}), std::invalid_argument);
}

TEST(bit_matrix, rank_and_product) {
    BitMatrix a = BitMatrix::identity(70);
    EXPECT_EQ(a.rank(), 70u);
    a.xor_row_into(3, 5);
    EXPECT_EQ(a.rank(), 70u);
    EXPECT_EQ((a * a.transposed()).rows(), 70u);
    BitMatrix b(3, 3);
    b.set(0, 0, true);
    b.set(1, 0, true);
    EXPECT_EQ(b.rank(), 1u);
    EXPECT_EQ(a * BitMatrix::identity(70), a);
}

TEST(tableau, symplectic_matrix_is_symplectic) {
    std::mt19937_64 rng(18);
    for (int trial = 0; trial < 20; trial++) {
        uint32_t n = 1 + rng() % 6;
        Tableau t = from_circuit(testing::random_clifford_circuit(n, 40, rng));
        BitMatrix m = t.symplectic_matrix();
        BitMatrix omega(2 * n, 2 * n);
        for (uint32_t a = 0; a < n; a++) {
            omega.set(a, n + a, true);
            omega.set(n + a, a, true);
        }
        EXPECT_EQ(m * omega * m.transposed(), omega);
    }
}

}  // namespace
}  // namespace cliffsat
