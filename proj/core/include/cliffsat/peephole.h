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

#ifndef CLIFFSAT_PEEPHOLE_H
#define CLIFFSAT_PEEPHOLE_H

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cliffsat/circuit.h"
#include "cliffsat/synthesizer.h"

namespace cliffsat {

enum class SliceKind { CLIFFORD, OPAQUE_RUN };

struct Slice {
    SliceKind kind = SliceKind::CLIFFORD;
    std::vector<Gate> gates;
    /// Sorted qubit indices touched by the gates.
    std::vector<uint32_t> qubit_support;
};

/// Greedy left-to-right grouping. A Clifford gate joins the open Clifford
/// slice unless it touches a qubit used by an opaque gate seen since that
/// slice opened; then the slice is closed, followed by the opaque run, and a
/// new slice starts. Opaque gates without operands block every qubit.
std::vector<Slice> slice_circuit(const Circuit &c);

/// Concatenation of all slice gates in order.
Circuit join_slices(const Circuit &like, const std::vector<Slice> &slices);

struct SliceReport {
    size_t index = 0;
    SliceKind kind = SliceKind::CLIFFORD;
    std::vector<uint32_t> qubits;
    Metrics before;
    Metrics after;
    /// OPTIMAL, BEST_FOUND or TIMEOUT_NO_RESULT from the synthesizer, or
    /// OPAQUE for opaque runs.
    std::string status;
    /// True when the synthesized circuit replaced the original slice.
    bool replaced = false;
    /// True when the slice as emitted still has a 2-qubit gate off the
    /// coupling graph (the input slice was off-graph and no result was found).
    bool coupling_violation = false;
    uint32_t achieved = 0;
    double seconds = 0;
    std::vector<SolveLogEntry> solve_log;
};

struct PeepholeOptions {
    /// Per-slice synthesis settings; time_limit is the per-slice budget and
    /// start_bound is filled in per slice.
    SynthesisOptions synthesis;
    /// Concurrent slice syntheses. Ignored (treated as 1) with permutation.
    unsigned jobs = 1;
    /// Optional wall-clock cut-off for the whole run. Slices started after it
    /// get no solver time and are kept as they are.
    std::optional<std::chrono::steady_clock::time_point> deadline;
    /// Thread-safe sinks (calls are serialized by the optimizer).
    std::function<void(size_t slice, const SolveLogEntry &)> on_solve;
    std::function<void(size_t slice, uint32_t d, const Encoding &)> on_formula;
};

struct PeepholeResult {
    Circuit circuit;
    /// Logical qubit a of the input is on wire final_map(a) at the end.
    Permutation final_map;
    std::vector<SliceReport> slices;
    /// True when a depth-mode permutation run made the whole circuit deeper
    /// and the input was returned unchanged instead.
    bool reverted = false;
};

/// Re-synthesizes every Clifford slice and reassembles the circuit. Slices
/// are only replaced when the chosen metric improves (or ties with fewer
/// gates), so the result never exceeds the input's metric. The exception is
/// a slice with a 2-qubit gate off the coupling graph: any synthesized
/// result replaces it. Throws std::invalid_argument for
/// permutation + coupling on circuits with multi-qubit opaque gates.
PeepholeResult optimize_circuit(const Circuit &c, const PeepholeOptions &options);

struct PeepholeCheck {
    bool ok = false;
    /// Reason for a failure; empty on success.
    std::string message;
    /// Wire map reconstructed from the output.
    Permutation final_map;
};

/// Checks that `output` is a valid rewrite of `input` in the sense of
/// optimize_circuit: the output splits into Clifford segments and opaque
/// runs that line up with the input's slices, every opaque gate reappears on
/// the wires its qubits currently occupy, and each Clifford segment equals
/// the corresponding input slice on x, z and r up to a column relabeling,
/// which is then carried forward. The accumulated relabeling must equal
/// `final_map`. Unless `allow_relabeling` is set, every relabeling must be
/// the identity.
PeepholeCheck verify_rewrite(const Circuit &input, const Circuit &output, const Permutation &final_map,
                             bool allow_relabeling);

}  // namespace cliffsat

#endif
