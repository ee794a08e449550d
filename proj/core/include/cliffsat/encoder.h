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

#ifndef CLIFFSAT_ENCODER_H
#define CLIFFSAT_ENCODER_H

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cliffsat/circuit.h"
#include "cliffsat/cnf.h"
#include "cliffsat/coupling.h"
#include "cliffsat/tableau.h"

namespace cliffsat {

enum class Metric { CX_COUNT, CX_DEPTH };
/// "cx-count" or "cx-depth".
const char *metric_name(Metric m);
/// Inverse of metric_name. Throws std::invalid_argument.
Metric parse_metric(std::string_view name);

struct EncodingOptions {
    bool gate_ordering = false;
    bool cycle_breaking = false;
    bool redundant_ctrl_trgt_eo = false;
    bool flip_aux_vars = false;

    bool operator==(const EncodingOptions &other) const = default;
};

/// One bounded synthesis query: reach `target` (x and z only) with exactly
/// `makespan_d` entangling layers.
struct SynthesisSpec {
    Tableau target;
    Metric metric = Metric::CX_COUNT;
    uint32_t makespan_d = 0;
    bool allow_permutation = false;
    std::optional<CouplingGraph> coupling;
    EncodingOptions opts;
};

/// Pre-rotation applied to a qubit ahead of each entangling layer.
enum class LayerGate : uint8_t { I, HS, SH };
/// One of the six local x/z transforms at the end of the circuit.
enum class FinalGate : uint8_t { I, H, S, HS, SH, HSH };

/// Gate lists in circuit order, e.g. HS -> {H(q), S(q)}.
std::vector<Gate> layer_gate_circuit(LayerGate g, uint32_t q);
std::vector<Gate> final_gate_circuit(FinalGate g, uint32_t q);

/// Maps every semantic encoding variable to its DIMACS id.
///
/// All families are allocated as contiguous blocks, so a lookup is pure
/// arithmetic. Families that a configuration does not use (flip variables
/// without flip_aux_vars, cycle indicators without cycle_breaking) are empty
/// and return 0.
class VariableLedger {
   public:
    VariableLedger() = default;
    /// Allocates every family in `f` for the given spec.
    VariableLedger(CnfFormula &f, const SynthesisSpec &spec);

    uint32_t num_qubits() const {
        return n_;
    }
    uint32_t makespan() const {
        return d_;
    }
    /// Last state index, 2d+1.
    uint32_t last_step() const {
        return 2 * d_ + 1;
    }
    /// Number of unordered pairs a < b.
    uint32_t num_pairs() const {
        return n_ * (n_ - 1) / 2;
    }
    /// Index of the pair (a, b), a < b, in lexicographic order.
    uint32_t pair_index(uint32_t a, uint32_t b) const;
    std::pair<uint32_t, uint32_t> pair_at(uint32_t p) const {
        return pairs_[p];
    }

    // State t in [0, 2d+1], row i in [0, 2n), column a in [0, n).
    Lit x(uint32_t t, uint32_t i, uint32_t a) const;
    Lit z(uint32_t t, uint32_t i, uint32_t a) const;
    // Transition t -> t+1 for t in [0, 2d]. True means "bit unchanged".
    Lit px(uint32_t t, uint32_t i, uint32_t a) const;
    Lit pz(uint32_t t, uint32_t i, uint32_t a) const;
    /// fx <-> not px, present only with flip_aux_vars.
    Lit fx(uint32_t t, uint32_t i, uint32_t a) const;
    Lit fz(uint32_t t, uint32_t i, uint32_t a) const;
    /// Literal meaning "bit flips": fx when available, otherwise -px.
    Lit flips_x(uint32_t t, uint32_t i, uint32_t a) const;
    Lit flips_z(uint32_t t, uint32_t i, uint32_t a) const;

    // Layer k in [0, d).
    Lit layer_gate(uint32_t k, uint32_t a, LayerGate g) const;
    Lit cnot(uint32_t k, uint32_t a, uint32_t b) const;
    Lit ctrl(uint32_t k, uint32_t a) const;
    Lit trgt(uint32_t k, uint32_t a) const;

    Lit final_gate(uint32_t a, FinalGate g) const;

    /// Layer pairs compared by cycle breaking, in allocation order.
    const std::vector<std::pair<uint32_t, uint32_t>> &cycle_pairs() const {
        return cycle_pairs_;
    }
    Lit dr(uint32_t pair, uint32_t i) const;
    Lit dxc(uint32_t pair, uint32_t a) const;
    Lit dzc(uint32_t pair, uint32_t a) const;

    bool has_flip_vars() const {
        return flip_ != 0;
    }

    /// One "c <family> <indices...> <id>" line per ledger variable.
    void write_comments(std::ostream &out) const;

   private:
    uint32_t n_ = 0;
    uint32_t d_ = 0;
    std::vector<std::pair<uint32_t, uint32_t>> pairs_;
    std::vector<std::pair<uint32_t, uint32_t>> cycle_pairs_;
    Lit x_ = 0, z_ = 0, px_ = 0, pz_ = 0, fx_ = 0, fz_ = 0, flip_ = 0;
    Lit layer_ = 0, cnot_ = 0, ctrl_ = 0, trgt_ = 0, final_ = 0, cycle_ = 0;

    Lit cell(Lit base, uint32_t t, uint32_t i, uint32_t a) const;
};

struct Encoding {
    CnfFormula formula;
    VariableLedger ledger;
};

/// Builds the complete bounded-reachability formula. Throws
/// std::invalid_argument if the coupling graph does not have exactly n qubits.
Encoding encode(const SynthesisSpec &spec);

struct FormulaSize {
    int64_t num_vars = 0;
    int64_t num_clauses = 0;
    bool operator==(const FormulaSize &other) const = default;
};

/// Variable and clause counts of encode(spec), computed without building it.
FormulaSize formula_size(const SynthesisSpec &spec);

struct DecodedCircuit {
    /// Normal-form body over {H, S, CX}; no Pauli gates.
    Circuit circuit;
    /// sigma(i) = a where x^0_{i,a} is true; identity without permutation.
    Permutation permutation;
};

/// Reads the chosen gates out of a satisfying assignment. Throws
/// InternalError if an exactly-one family is violated.
DecodedCircuit decode_model(const VariableLedger &ledger, const std::vector<bool> &model, const SynthesisSpec &spec);

/// Individual constraint families, exposed for targeted tests.
namespace constraints {

void propagation(CnfFormula &f, const VariableLedger &v, const SynthesisSpec &spec);
void one_qubit_layer(CnfFormula &f, const VariableLedger &v, const SynthesisSpec &spec, uint32_t k);
void cnot_layer_count(CnfFormula &f, const VariableLedger &v, const SynthesisSpec &spec, uint32_t k);
void cnot_layer_depth(CnfFormula &f, const VariableLedger &v, const SynthesisSpec &spec, uint32_t k);
void coupling(CnfFormula &f, const VariableLedger &v, const SynthesisSpec &spec, uint32_t k);
void redundant_eo(CnfFormula &f, const VariableLedger &v, const SynthesisSpec &spec, uint32_t k);
void final_layer(CnfFormula &f, const VariableLedger &v, const SynthesisSpec &spec);
void initial(CnfFormula &f, const VariableLedger &v, const SynthesisSpec &spec);
void goal(CnfFormula &f, const VariableLedger &v, const SynthesisSpec &spec);
void gate_ordering(CnfFormula &f, const VariableLedger &v, const SynthesisSpec &spec);
void cycle_breaking(CnfFormula &f, const VariableLedger &v, const SynthesisSpec &spec);

}  // namespace constraints

}  // namespace cliffsat

#endif
