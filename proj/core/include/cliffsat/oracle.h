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

#ifndef CLIFFSAT_ORACLE_H
#define CLIFFSAT_ORACLE_H

#include <cstdint>
#include <optional>

#include "cliffsat/coupling.h"
#include "cliffsat/tableau.h"

namespace cliffsat {

/// Largest qubit count the exhaustive searches accept.
constexpr uint32_t kOracleMaxQubits = 4;

/// The x,z part of a tableau with n <= 4 packed into one word. Row i uses
/// bits [2n*i, 2n*i + 2n): x columns first, then z columns.
struct CanonicalState {
    uint64_t bits = 0;
    bool operator==(const CanonicalState &other) const = default;
};

/// Throws CapabilityError for n > 4.
CanonicalState pack_xz(const Tableau &t);

/// Minimum CNOT count over all Clifford circuits whose tableau has the
/// target's x and z. With `allow_permutation`, minimized over relabelings of
/// the target's columns. Exhaustive for n <= 3 (cached per coupling graph);
/// n = 4 runs a bounded search and throws CapabilityError when it exceeds
/// its state budget. Returns -1 when the coupling graph cannot produce the
/// target at all.
int min_cx_count(const Tableau &target, const std::optional<CouplingGraph> &coupling = std::nullopt,
                 bool allow_permutation = false);

/// Minimum number of layers of disjoint CNOTs, with arbitrary single-qubit
/// gates between layers. Same size limits as min_cx_count.
int min_cx_depth(const Tableau &target, const std::optional<CouplingGraph> &coupling = std::nullopt,
                 bool allow_permutation = false);

namespace detail {

/// min_cx_count computed by breadth-first search over local-orbit classes
/// instead of 0-1 BFS over raw states. Used to cross-check the two searches.
int min_cx_count_by_classes(const Tableau &target, const std::optional<CouplingGraph> &coupling);

/// Number of distinct local-orbit classes reachable from the identity. Only
/// for n <= 3.
uint64_t count_local_classes(uint32_t n);

}  // namespace detail

}  // namespace cliffsat

#endif
