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

#ifndef CLIFFSAT_SYNTHESIZER_H
#define CLIFFSAT_SYNTHESIZER_H

#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "cliffsat/circuit.h"
#include "cliffsat/cnf.h"
#include "cliffsat/coupling.h"
#include "cliffsat/encoder.h"
#include "cliffsat/tableau.h"

namespace cliffsat {

enum class SearchStrategy { FORWARD, BACKWARD };
const char *search_name(SearchStrategy s);
SearchStrategy parse_search(std::string_view name);

enum class SynthesisStatus { OPTIMAL, BEST_FOUND, TIMEOUT_NO_RESULT };
const char *synthesis_status_name(SynthesisStatus s);

struct SolveLogEntry {
    uint32_t d = 0;
    SolveStatus status = SolveStatus::TIMEOUT;
    double seconds = 0;
    int64_t vars = 0;
    int64_t clauses = 0;
};

struct SynthesisOptions {
    Metric metric = Metric::CX_COUNT;
    SearchStrategy search = SearchStrategy::FORWARD;
    bool allow_permutation = false;
    std::optional<CouplingGraph> coupling;
    EncodingOptions encoding;
    SolverConfig solver;
    /// Wall-clock budget shared by every solver call of one synthesize().
    double time_limit = 600;
    /// First makespan tried by BACKWARD search. Required for BACKWARD.
    std::optional<uint32_t> start_bound;
    /// FORWARD gives up (TIMEOUT_NO_RESULT) after this makespan.
    std::optional<uint32_t> max_makespan;
    /// After BACKWARD, run forward checks below the result to prove optimality.
    bool certify = false;

    /// Called after every solver call.
    std::function<void(const SolveLogEntry &)> on_solve;
    /// Called with each formula before it is solved.
    std::function<void(uint32_t d, const Encoding &)> on_formula;
};

struct SynthesisOutcome {
    /// Pauli prefix followed by the normal-form body; empty without a result.
    std::optional<Circuit> circuit;
    /// Output relabeling: logical qubit a ends on wire permutation(a).
    Permutation permutation;
    uint32_t achieved = 0;
    SynthesisStatus status = SynthesisStatus::TIMEOUT_NO_RESULT;
    std::vector<SolveLogEntry> solve_log;
};

/// Searches over the makespan d for a circuit whose tableau equals `target`
/// (with columns relabeled by the returned permutation when permitted).
///
/// Every returned circuit is re-simulated and compared against the target on
/// x, z and r; a mismatch, or a CX off the coupling graph, throws
/// InternalError. Solver environment/protocol errors propagate.
SynthesisOutcome synthesize(const Tableau &target, const SynthesisOptions &options);

/// True iff from_circuit(output) equals from_circuit(input) with columns
/// moved by `permutation`, on all of x, z and r. Throws
/// UnsupportedGateError (an std::invalid_argument) for OPAQUE gates and
/// std::invalid_argument for mismatched sizes.
bool verify(const Circuit &input, const Circuit &output, const Permutation &permutation);

}  // namespace cliffsat

#endif
