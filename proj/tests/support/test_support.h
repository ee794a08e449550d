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

#ifndef CLIFFSAT_TESTS_TEST_SUPPORT_H
#define CLIFFSAT_TESTS_TEST_SUPPORT_H

#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "cliffsat/circuit.h"
#include "cliffsat/cnf.h"

namespace cliffsat::testing {

/// The solver the tests run against (the bundled CaDiCaL unless overridden
/// by CLIFFSAT_TEST_SOLVER in the environment).
SolverConfig test_solver();

/// Uniformly chosen gates from {H, S, CX} plus Paulis, `len` of them.
Circuit random_clifford_circuit(uint32_t n, size_t len, std::mt19937_64 &rng);

/// Same, but CXs only on the given edges (in a random direction).
Circuit random_coupled_circuit(uint32_t n, const std::vector<std::pair<uint32_t, uint32_t>> &edges, size_t len,
                               std::mt19937_64 &rng);

/// The two-CNOT, two-qubit example circuit used throughout the tests:
/// cx q0,q1; s q1; cx q0,q1; x q1.
Circuit two_cnot_example();

// ---------------------------------------------------------------------------
// A second, deliberately naive model of Clifford x/z action and of minimum
// CNOT counts, kept separate from the library so the two can be compared.
// ---------------------------------------------------------------------------

/// 2n x 2n binary matrix; row i is the image of the i-th generator
/// (X_0..X_{n-1}, Z_0..Z_{n-1}) written as (x bits | z bits).
struct RefSymplectic {
    uint32_t n = 0;
    std::vector<std::vector<uint8_t>> rows;

    static RefSymplectic identity(uint32_t n);
    void apply(const Gate &g);
    static RefSymplectic of(const Circuit &c);
    /// Moves qubit column a to column p[a].
    RefSymplectic relabeled(const std::vector<uint32_t> &p) const;
    uint64_t key() const;
    bool operator==(const RefSymplectic &o) const = default;
};

/// Minimum number of CX gates (1-qubit gates free) by plain 0-1 BFS over the
/// whole group. n <= 3 only. nullopt `edges` means all-to-all; an empty list
/// allows no CX at all. Returns -1 if unreachable.
int ref_min_cx(const RefSymplectic &target, const std::optional<std::vector<std::pair<uint32_t, uint32_t>>> &edges,
               bool allow_permutation);

// ---------------------------------------------------------------------------
// CNF helpers independent of the library's writer.
// ---------------------------------------------------------------------------

struct ParsedCnf {
    int num_vars = 0;
    size_t declared_clauses = 0;
    std::vector<std::vector<int>> clauses;
};

/// Reads DIMACS text; comment lines are skipped. Any deviation from the
/// format fails the current test via ADD_FAILURE and returns what was read.
ParsedCnf parse_dimacs_text(const std::string &text);

/// True iff `assignment` (index v for variable v, 0 unused) satisfies f.
bool satisfies(const CnfFormula &f, const std::vector<bool> &assignment);

/// All assignments of the first `visible` variables that extend to a model
/// of f, found by enumerating every assignment of every variable. Each entry
/// packs variable v into bit v-1. Only for small formulas.
std::set<uint64_t> projected_models(const CnfFormula &f, int visible);

}  // namespace cliffsat::testing

#endif
