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

#include "cliffsat/oracle.h"

#include <gtest/gtest.h>

#include "cliffsat/errors.h"
#include "test_support.h"

namespace cliffsat {
namespace {

using testing::RefSymplectic;
using Edges = std::vector<std::pair<uint32_t, uint32_t>>;

uint64_t symplectic_group_order(uint32_t n) {
    uint64_t order = uint64_t{1} << (n * n);
    for (uint32_t i = 1; i <= n; i++) {
        order *= (uint64_t{1} << (2 * i)) - 1;
    }
    return order;
}

TEST(min_cx_count, examples) {
    EXPECT_EQ(min_cx_count(initial_tableau(2)), 0);
    EXPECT_EQ(min_cx_count(initial_tableau(4)), 0);
    EXPECT_EQ(min_cx_count(from_circuit(testing::two_cnot_example())), 1);
    Tableau swap = from_circuit(Circuit(2, {Gate::swap(0, 1)}));
    EXPECT_EQ(min_cx_count(swap), 3);
    EXPECT_EQ(min_cx_count(swap, std::nullopt, true), 0);
}

TEST(min_cx_depth, examples) {
    EXPECT_EQ(min_cx_depth(initial_tableau(3)), 0);
    EXPECT_EQ(min_cx_depth(from_circuit(Circuit(4, {Gate::cx(0, 1), Gate::cx(2, 3)}))), 1);
    EXPECT_EQ(min_cx_count(from_circuit(Circuit(4, {Gate::cx(0, 1), Gate::cx(2, 3)}))), 2);
    Tableau swap = from_circuit(Circuit(2, {Gate::swap(0, 1)}));
    EXPECT_EQ(min_cx_depth(swap), 3);
    EXPECT_EQ(min_cx_depth(swap, std::nullopt, true), 0);
}

TEST(oracle, reference_search_agrees_on_swap) {
    EXPECT_EQ(testing::ref_min_cx(RefSymplectic::of(Circuit(2, {Gate::swap(0, 1)})), std::nullopt, false), 3);
}

TEST(oracle, size_limits) {
    EXPECT_THROW(min_cx_count(initial_tableau(5)), CapabilityError);
    EXPECT_THROW(min_cx_depth(initial_tableau(5)), CapabilityError);
    EXPECT_THROW(pack_xz(initial_tableau(5)), CapabilityError);
    EXPECT_THROW(detail::count_local_classes(4), CapabilityError);
}

TEST(oracle, class_counts_match_group_order) {
    EXPECT_EQ(symplectic_group_order(2), 720u);
    for (uint32_t n : {1u, 2u, 3u}) {
        uint64_t local = 1;
        for (uint32_t k = 0; k < n; k++) {
            local *= 6;
        }
        EXPECT_EQ(detail::count_local_classes(n), symplectic_group_order(n) / local) << n;
    }
}

TEST(oracle, count_matches_reference_all_to_all) {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 60; trial++) {
        uint32_t n = 1 + trial % 3;
        Circuit c = testing::random_clifford_circuit(n, 30, rng);
        Tableau t = from_circuit(c);
        RefSymplectic ref = RefSymplectic::of(c);
        for (bool perm : {false, true}) {
            int want = testing::ref_min_cx(ref, std::nullopt, perm);
            EXPECT_EQ(min_cx_count(t, std::nullopt, perm), want) << trial << " " << perm;
            // With three qubits or fewer, any two CNOTs share a qubit.
            EXPECT_EQ(min_cx_depth(t, std::nullopt, perm), want) << trial << " " << perm;
        }
    }
}

TEST(oracle, count_matches_reference_with_coupling) {
    std::mt19937_64 rng(32);
    std::vector<Edges> graphs{{{0, 1}, {1, 2}}, {{0, 2}}, {{0, 1}, {1, 2}, {0, 2}}};
    for (const auto &edges : graphs) {
        CouplingGraph g(3);
        for (auto [a, b] : edges) {
            g.add_edge(a, b);
        }
        for (int trial = 0; trial < 15; trial++) {
            Circuit c = testing::random_coupled_circuit(3, edges, 20, rng);
            Tableau t = from_circuit(c);
            RefSymplectic ref = RefSymplectic::of(c);
            for (bool perm : {false, true}) {
                int want = testing::ref_min_cx(ref, edges, perm);
                EXPECT_EQ(min_cx_count(t, g, perm), want);
                EXPECT_EQ(min_cx_depth(t, g, perm), want);
            }
        }
    }
}

TEST(oracle, unreachable_without_edges) {
    Tableau t = from_circuit(Circuit(3, {Gate::cx(0, 1)}));
    CouplingGraph none(3);
    EXPECT_EQ(min_cx_count(t, none), -1);
    EXPECT_EQ(min_cx_depth(t, none), -1);
    EXPECT_EQ(testing::ref_min_cx(RefSymplectic::of(Circuit(3, {Gate::cx(0, 1)})), Edges{}, false), -1);
    EXPECT_EQ(min_cx_count(from_circuit(Circuit(3, {Gate::h(0)})), none), 0);
}

TEST(oracle, class_search_matches_raw_search) {
    std::mt19937_64 rng(33);
    std::vector<std::optional<CouplingGraph>> graphs{std::nullopt, builtin_topology("line", 3)};
    for (const auto &g : graphs) {
        for (int trial = 0; trial < 30; trial++) {
            uint32_t n = g ? 3 : 2 + trial % 2;
            Tableau t = from_circuit(testing::random_clifford_circuit(n, 30, rng));
            EXPECT_EQ(detail::min_cx_count_by_classes(t, g), min_cx_count(t, g));
        }
    }
}

TEST(oracle, four_qubit_properties) {
    std::mt19937_64 rng(34);
    for (int trial = 0; trial < 4; trial++) {
        Circuit c = testing::random_clifford_circuit(4, 10, rng);
        Tableau t = from_circuit(c);
        Metrics m = compute_metrics(c);
        int count = min_cx_count(t);
        int depth = min_cx_depth(t);
        EXPECT_LE(count, static_cast<int>(m.cx_count));
        EXPECT_LE(depth, static_cast<int>(m.cx_depth));
        EXPECT_LE(depth, count);
        EXPECT_LE(min_cx_count(t, std::nullopt, true), count);
        EXPECT_LE(min_cx_depth(t, std::nullopt, true), depth);
    }
}

TEST(oracle, permutation_dominance_and_depth_bound) {
    std::mt19937_64 rng(35);
    for (int trial = 0; trial < 40; trial++) {
        uint32_t n = 2 + trial % 2;
        Tableau t = from_circuit(testing::random_clifford_circuit(n, 30, rng));
        EXPECT_LE(min_cx_count(t, std::nullopt, true), min_cx_count(t));
        EXPECT_LE(min_cx_depth(t, std::nullopt, true), min_cx_depth(t));
        EXPECT_LE(min_cx_depth(t), min_cx_count(t));
    }
}

TEST(pack_xz, distinguishes_and_ignores_phase) {
    Tableau t = from_circuit(testing::two_cnot_example());
    EXPECT_EQ(pack_xz(t), pack_xz(apply_gate(t, Gate::y(1))));
    EXPECT_FALSE(pack_xz(t) == pack_xz(initial_tableau(2)));
}

}  // namespace
}  // namespace cliffsat
