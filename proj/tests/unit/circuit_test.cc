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

#include "cliffsat/circuit.h"

#include <gtest/gtest.h>

#include <sstream>

#include "cliffsat/errors.h"
#include "cliffsat/tableau.h"
#include "test_support.h"

namespace cliffsat {
namespace {

const char *kTwoCnot = "OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[2];\ncx q[0],q[1];\ns q[1];\ncx q[0],q[1];\nx q[1];\n";

std::vector<std::string> instruction_lines(const std::string &text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.starts_with("OPENQASM") || line.starts_with("include") || line.starts_with("qreg") ||
            line.starts_with("creg") || line.starts_with("//") || line.empty()) {
            continue;
        }
        out.push_back(line);
    }
    return out;
}

TEST(parse_qasm, two_cnot_example) {
    Circuit c = parse_qasm("qreg q[2]; cx q[0],q[1]; s q[1]; cx q[0],q[1]; x q[1];");
    EXPECT_EQ(c.num_qubits, 2u);
    std::vector<Gate> want{Gate::cx(0, 1), Gate::s(1), Gate::cx(0, 1), Gate::x(1)};
    EXPECT_EQ(c.gates, want);
}

TEST(parse_qasm, empty_register) {
    Circuit c = parse_qasm("qreg q[1];");
    EXPECT_EQ(c.num_qubits, 1u);
    EXPECT_TRUE(c.gates.empty());
}

TEST(parse_qasm, non_clifford_is_opaque) {
    Circuit c = parse_qasm("qreg q[3]; t q[2]; cx q[0],q[1];");
    ASSERT_EQ(c.gates.size(), 2u);
    EXPECT_EQ(c.gates[0].kind, GateKind::OPAQUE);
    EXPECT_EQ(c.gates[0].label, "t q[2];");
    EXPECT_EQ(c.gates[0].qubits, std::vector<uint32_t>{2});
    EXPECT_EQ(c.gates[1], Gate::cx(0, 1));
}

TEST(parse_qasm, accepted_clifford_names) {
    Circuit c = parse_qasm("qreg q[2]; h q[0]; s q[0]; sdg q[0]; x q[0]; y q[0]; z q[0]; id q[1];"
                           "cx q[0],q[1]; CX q[1],q[0]; cz q[0],q[1]; swap q[0],q[1];");
    std::vector<GateKind> want{GateKind::H,  GateKind::S,  GateKind::SDG, GateKind::X,
                               GateKind::Y,  GateKind::Z,  GateKind::ID,  GateKind::CX,
                               GateKind::CX, GateKind::CZ, GateKind::SWAP};
    ASSERT_EQ(c.gates.size(), want.size());
    for (size_t k = 0; k < want.size(); k++) {
        EXPECT_EQ(c.gates[k].kind, want[k]) << k;
    }
    EXPECT_TRUE(c.is_pure_clifford());
}

TEST(parse_qasm, parameterized_and_other_gates_are_opaque) {
    Circuit c = parse_qasm("qreg q[3]; creg c[3]; rz(pi/4) q[0]; ccx q[0],q[1],q[2]; u3(0.1,0.2,0.3) q[1];"
                           "tdg q[2]; measure q[0] -> c[0]; barrier q[0],q[1];");
    ASSERT_EQ(c.gates.size(), 6u);
    for (const auto &g : c.gates) {
        EXPECT_EQ(g.kind, GateKind::OPAQUE) << g.label;
    }
    EXPECT_EQ(c.gates[1].qubits, (std::vector<uint32_t>{0, 1, 2}));
    EXPECT_EQ(c.gates[4].tail, "-> c[0]");
    EXPECT_FALSE(c.is_pure_clifford());
}

TEST(parse_qasm, broadcast_clifford) {
    Circuit c = parse_qasm("qreg a[2]; qreg b[2]; h a; cx a,b;");
    EXPECT_EQ(c.num_qubits, 4u);
    std::vector<Gate> want{Gate::h(0), Gate::h(1), Gate::cx(0, 2), Gate::cx(1, 3)};
    EXPECT_EQ(c.gates, want);
}

TEST(parse_qasm, broadcast_opaque_expands_per_index) {
    Circuit c = parse_qasm("qreg q[2]; creg c[2]; t q; measure q -> c; barrier q;");
    ASSERT_EQ(c.gates.size(), 5u);
    EXPECT_EQ(c.gates[0].label, "t q[0];");
    EXPECT_EQ(c.gates[1].label, "t q[1];");
    EXPECT_EQ(c.gates[2].label, "measure q[0] -> c[0];");
    EXPECT_EQ(c.gates[3].label, "measure q[1] -> c[1];");
    EXPECT_EQ(c.gates[4].qubits, (std::vector<uint32_t>{0, 1}));
}

TEST(parse_qasm, comments_and_gate_definitions_are_skipped) {
    Circuit c = parse_qasm("OPENQASM 2.0;\n// a comment\ninclude \"qelib1.inc\";\n"
                           "gate foo a { h a; cx a,a; }\nqreg q[1];\nh q[0]; // trailing\n");
    ASSERT_EQ(c.gates.size(), 1u);
    EXPECT_EQ(c.gates[0], Gate::h(0));
}

TEST(parse_qasm, errors) {
    EXPECT_THROW(parse_qasm("qreg q[2]; cx q[0],q[2];"), RangeError);
    EXPECT_THROW(parse_qasm("qreg q[2]; cx q[0],q[0];"), ParseError);
    EXPECT_THROW(parse_qasm("qreg q[2]; cx q[0];"), ParseError);
    EXPECT_THROW(parse_qasm("qreg q[2]; h q[0]"), ParseError);
    EXPECT_THROW(parse_qasm("qreg q[2]; h r[0];"), ParseError);
    EXPECT_THROW(parse_qasm("qreg q[2]; h(0.5) q[0];"), ParseError);
    EXPECT_THROW(parse_qasm("qreg q[2]; qreg r[3]; cx q,r;"), ParseError);
    EXPECT_THROW(parse_qasm("qreg q[0];"), ParseError);
    try {
        parse_qasm("qreg q[2];\nh q[0];\nfoo bar baz;\n");
        FAIL();
    } catch (const ParseError &e) {
        EXPECT_EQ(e.line, 3u);
    }
}

TEST(emit_qasm, single_cx) {
    std::string text = emit_qasm(Circuit(2, {Gate::cx(0, 1)}));
    auto lines = instruction_lines(text);
    ASSERT_EQ(lines.size(), 1u);
    EXPECT_EQ(lines[0], "cx q[0],q[1];");
    EXPECT_EQ(text.find("cx q[0],q[1];"), text.rfind("cx q[0],q[1];"));
}

TEST(emit_qasm, two_cnot_example_order) {
    auto lines = instruction_lines(emit_qasm(testing::two_cnot_example()));
    std::vector<std::string> want{"cx q[0],q[1];", "s q[1];", "cx q[0],q[1];", "x q[1];"};
    EXPECT_EQ(lines, want);
}

TEST(emit_qasm, empty_circuit_is_header_only) {
    std::string text = emit_qasm(Circuit(3));
    EXPECT_TRUE(instruction_lines(text).empty());
    EXPECT_NE(text.find("OPENQASM 2.0;"), std::string::npos);
    EXPECT_NE(text.find("qreg q[3];"), std::string::npos);
}

TEST(emit_qasm, round_trip_preserves_gates_and_header) {
    std::string src = "OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg a[2];\nqreg b[1];\ncreg c[1];\n"
                      "h a[1];\nrz(0.5) b[0];\ncx a[0],b[0];\nmeasure b[0] -> c[0];\n";
    Circuit c = parse_qasm(src);
    std::string text = emit_qasm(c);
    EXPECT_EQ(text, src);
    EXPECT_EQ(parse_qasm(text), c);
}

TEST(emit_qasm, comments_follow_version_line) {
    std::vector<std::string> comments{"note one"};
    std::string text = emit_qasm(parse_qasm(kTwoCnot), comments);
    EXPECT_TRUE(text.starts_with("OPENQASM 2.0;\n// note one\n"));
}

TEST(compute_metrics, examples) {
    Metrics m = compute_metrics(testing::two_cnot_example());
    EXPECT_EQ(m.cx_count, 2u);
    EXPECT_EQ(m.cx_depth, 2u);
    EXPECT_EQ(m.gate_count, 4u);
    EXPECT_EQ(compute_metrics(Circuit(2)), Metrics{});
    Metrics p = compute_metrics(Circuit(4, {Gate::cx(0, 1), Gate::cx(2, 3)}));
    EXPECT_EQ(p.cx_count, 2u);
    EXPECT_EQ(p.cx_depth, 1u);
}

TEST(compute_metrics, literal_cx_only) {
    Circuit c(2, {Gate::cz(0, 1), Gate::swap(0, 1), Gate::cx(0, 1)});
    EXPECT_EQ(compute_metrics(c).cx_count, 1u);
    EXPECT_EQ(compute_metrics(decompose_circuit(c)).cx_count, 5u);
}

TEST(compute_metrics, depth_never_exceeds_count) {
    std::mt19937_64 rng(7);
    for (int k = 0; k < 200; k++) {
        Circuit c = testing::random_clifford_circuit(1 + rng() % 6, 40, rng);
        Metrics m = compute_metrics(c);
        EXPECT_LE(m.cx_depth, m.cx_count);
    }
}

TEST(decompose_to_base, examples) {
    EXPECT_EQ(decompose_to_base(Gate::s(0)), std::vector<Gate>{Gate::s(0)});
    EXPECT_EQ(decompose_to_base(Gate::sdg(0)), (std::vector<Gate>{Gate::s(0), Gate::s(0), Gate::s(0)}));
    EXPECT_EQ(decompose_to_base(Gate::swap(0, 1)),
              (std::vector<Gate>{Gate::cx(0, 1), Gate::cx(1, 0), Gate::cx(0, 1)}));
    EXPECT_EQ(decompose_to_base(Gate::cz(0, 1)), (std::vector<Gate>{Gate::h(1), Gate::cx(0, 1), Gate::h(1)}));
    EXPECT_THROW(decompose_to_base(Gate::opaque("t q[0];", {0})), UnsupportedGateError);
}

TEST(decompose_to_base, swap_exchanges_columns) {
    Tableau t = from_circuit(Circuit(2, decompose_to_base(Gate::swap(0, 1))));
    Tableau id(2);
    for (size_t i = 0; i < 4; i++) {
        for (size_t a = 0; a < 2; a++) {
            EXPECT_EQ(t.x(i, a), id.x(i, 1 - a));
            EXPECT_EQ(t.z(i, a), id.z(i, 1 - a));
        }
        EXPECT_FALSE(t.r(i));
    }
}

TEST(decompose_to_base, preserves_full_tableau) {
    for (const Gate &g : {Gate::sdg(0), Gate::cz(0, 1), Gate::swap(0, 1), Gate::id(1)}) {
        Circuit one(2, {g});
        Circuit base(2, decompose_to_base(g));
        EXPECT_TRUE(equivalent(from_circuit(one), from_circuit(base))) << g.str();
    }
}

TEST(circuit, relabel_opaque_statements) {
    Circuit c = parse_qasm("qreg q[3]; creg c[3]; rz(0.25) q[0]; measure q[2] -> c[2]; cx q[0],q[2];");
    std::vector<uint32_t> wire_of{1, 2, 0};
    Gate a = c.relabel(c.gates[0], wire_of);
    EXPECT_EQ(a.label, "rz(0.25) q[1];");
    EXPECT_EQ(a.qubits, std::vector<uint32_t>{1});
    Gate b = c.relabel(c.gates[1], wire_of);
    EXPECT_EQ(b.label, "measure q[0] -> c[2];");
    EXPECT_EQ(c.relabel(c.gates[2], wire_of), Gate::cx(1, 0));
    std::vector<uint32_t> same{0, 1, 2};
    EXPECT_EQ(c.relabel(c.gates[0], same), c.gates[0]);
}

TEST(circuit, append_range_checks) {
    Circuit c(2);
    EXPECT_THROW(c.append(Gate::h(2)), RangeError);
    EXPECT_THROW(Circuit(2, {Gate::cx(0, 3)}), RangeError);
}

}  // namespace
}  // namespace cliffsat
