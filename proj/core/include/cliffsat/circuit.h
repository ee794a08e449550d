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

#ifndef CLIFFSAT_CIRCUIT_H
#define CLIFFSAT_CIRCUIT_H

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cliffsat {

enum class GateKind : uint8_t { H, S, SDG, X, Y, Z, CX, CZ, SWAP, ID, OPAQUE };

/// Lower-case QASM mnemonic ("h", "cx", ...). OPAQUE maps to "opaque".
std::string_view gate_name(GateKind kind);
size_t gate_arity(GateKind kind);

/// One instruction. Clifford and Pauli gates carry only their kind and qubits.
///
/// OPAQUE gates are anything the tableau cannot model (t, rz, measure,
/// barrier, classically controlled ops, user gates). They keep the original
/// statement text in `label` so that emission is verbatim. `head` is the
/// part before the qubit operands ("rz(pi/4)", "measure") and `tail` the
/// part after them ("-> c[0]"); both are used only when the gate has to be
/// re-rendered on different qubits.
struct Gate {
    GateKind kind = GateKind::ID;
    std::vector<uint32_t> qubits;
    std::string label;
    std::string head;
    std::string tail;

    static Gate h(uint32_t q);
    static Gate s(uint32_t q);
    static Gate sdg(uint32_t q);
    static Gate x(uint32_t q);
    static Gate y(uint32_t q);
    static Gate z(uint32_t q);
    static Gate id(uint32_t q);
    static Gate cx(uint32_t control, uint32_t target);
    static Gate cz(uint32_t a, uint32_t b);
    static Gate swap(uint32_t a, uint32_t b);
    static Gate opaque(std::string label, std::vector<uint32_t> qubits);

    bool is_clifford() const {
        return kind != GateKind::OPAQUE;
    }
    bool operator==(const Gate &other) const = default;
    std::string str() const;
};

struct QuantumRegister {
    std::string name;
    uint32_t offset = 0;
    uint32_t size = 0;
    bool operator==(const QuantumRegister &other) const = default;
};

/// Ordered gate list over a flat qubit index space.
///
/// Multiple qregs are flattened in declaration order; `qregs` remembers the
/// layout so emission can address qubits by their original register names.
struct Circuit {
    uint32_t num_qubits = 0;
    std::vector<Gate> gates;
    /// Normalized preamble statements (version, includes, registers, gate
    /// definitions), emitted verbatim ahead of the gate list.
    std::vector<std::string> header;
    std::vector<QuantumRegister> qregs;

    Circuit() = default;
    explicit Circuit(uint32_t num_qubits, std::vector<Gate> gates = {});

    bool operator==(const Circuit &other) const = default;

    /// Appends a gate after range-checking its qubits.
    Circuit &append(Gate g);

    /// True when no gate is OPAQUE.
    bool is_pure_clifford() const;

    /// QASM operand text for a flat qubit index, e.g. "q[3]".
    std::string operand(uint32_t qubit) const;

    /// A copy of `g` acting on wire_of[q] instead of q. OPAQUE labels are
    /// rebuilt from head/tail when any wire actually moves.
    Gate relabel(const Gate &g, std::span<const uint32_t> wire_of) const;

    /// Same header and registers, no gates.
    Circuit empty_like() const;
};

struct Metrics {
    uint64_t cx_count = 0;
    uint64_t cx_depth = 0;
    uint64_t gate_count = 0;
    bool operator==(const Metrics &other) const = default;
};

/// Parses the OPENQASM 2.0 subset described in the README. Throws ParseError
/// (with line number) on malformed input and RangeError on bad qubit indices.
Circuit parse_qasm(std::string_view text);

/// Renders a circuit so that parse_qasm(emit_qasm(c)) == c. Extra comment
/// lines are inserted right after the version statement.
std::string emit_qasm(const Circuit &c, std::span<const std::string> comments = {});

/// cx_count and cx_depth look at literal CX instructions only.
Metrics compute_metrics(const Circuit &c);

/// Rewrites a non-OPAQUE gate into {H, S, CX, X, Y, Z}.
std::vector<Gate> decompose_to_base(const Gate &g);

/// Applies decompose_to_base to every non-OPAQUE gate.
Circuit decompose_circuit(const Circuit &c);

}  // namespace cliffsat

#endif
