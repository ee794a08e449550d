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

#include "cliffsat/encoder.h"

#include <gtest/gtest.h>

#include <map>
#include <sstream>

#include "cliffsat/errors.h"
#include "cliffsat/oracle.h"
#include "test_support.h"

namespace cliffsat {
namespace {

struct Outcome {
    SolveStatus status;
    std::optional<DecodedCircuit> decoded;
};

// Checks the decoded circuit against the query before handing it back.
void expect_closure(const SynthesisSpec &spec, const DecodedCircuit &dec) {
    uint32_t n = static_cast<uint32_t>(spec.target.num_qubits());
    Tableau start = permute_columns(initial_tableau(n), dec.permutation);
    EXPECT_TRUE(equivalent_xz(run_circuit(dec.circuit, start), spec.target));
    if (!spec.allow_permutation) {
        EXPECT_TRUE(dec.permutation.is_identity());
    }
    Metrics m = compute_metrics(dec.circuit);
    if (spec.metric == Metric::CX_COUNT) {
        EXPECT_EQ(m.cx_count, spec.makespan_d);
    } else {
        EXPECT_LE(m.cx_depth, spec.makespan_d);
    }
    for (const auto &g : dec.circuit.gates) {
        EXPECT_TRUE(g.kind == GateKind::H || g.kind == GateKind::S || g.kind == GateKind::CX) << g.str();
        if (g.kind == GateKind::CX && spec.coupling) {
            EXPECT_TRUE(spec.coupling->connected(g.qubits[0], g.qubits[1])) << g.str();
        }
    }
}

Outcome run(const SynthesisSpec &spec) {
    Encoding enc = encode(spec);
    SolverResult r = solve(enc.formula, testing::test_solver(), 120);
    Outcome out{r.status, std::nullopt};
    if (r.status == SolveStatus::SAT) {
        EXPECT_TRUE(testing::satisfies(enc.formula, r.model));
        out.decoded = decode_model(enc.ledger, r.model, spec);
        expect_closure(spec, *out.decoded);
    }
    return out;
}

SynthesisSpec make_spec(const Tableau &t, Metric m, uint32_t d, bool perm = false, EncodingOptions opts = {}) {
    SynthesisSpec s;
    s.target = t;
    s.metric = m;
    s.makespan_d = d;
    s.allow_permutation = perm;
    s.opts = opts;
    return s;
}

EncodingOptions all_options() {
    return {true, true, true, true};
}

TEST(encode, empty_synthesis_at_depth_zero) {
    Outcome o = run(make_spec(initial_tableau(2), Metric::CX_COUNT, 0));
    ASSERT_EQ(o.status, SolveStatus::SAT);
    EXPECT_TRUE(o.decoded->circuit.gates.empty());
    EXPECT_TRUE(o.decoded->permutation.is_identity());
}

TEST(encode, identity_needs_no_cnot_and_one_is_never_local) {
    EXPECT_EQ(min_cx_count(initial_tableau(2)), 0);
    EXPECT_EQ(run(make_spec(initial_tableau(2), Metric::CX_COUNT, 1)).status, SolveStatus::UNSAT);
    EXPECT_EQ(run(make_spec(initial_tableau(2), Metric::CX_COUNT, 1, false, all_options())).status,
              SolveStatus::UNSAT);
}

TEST(encode, two_cnot_example_at_one_layer) {
    Tableau target = from_circuit(testing::two_cnot_example());
    for (Metric m : {Metric::CX_COUNT, Metric::CX_DEPTH}) {
        EXPECT_EQ(run(make_spec(target, m, 0)).status, SolveStatus::UNSAT);
        Outcome o = run(make_spec(target, m, 1));
        ASSERT_EQ(o.status, SolveStatus::SAT);
        EXPECT_EQ(compute_metrics(o.decoded->circuit).cx_count, 1u);
        EXPECT_TRUE(equivalent_xz(from_circuit(o.decoded->circuit), target));
    }
}

TEST(encode, decoded_words_are_normal_form) {
    Tableau target = from_circuit(testing::two_cnot_example());
    Outcome o = run(make_spec(target, Metric::CX_COUNT, 1));
    ASSERT_TRUE(o.decoded);
    const auto &gates = o.decoded->circuit.gates;
    size_t cx = 0;
    while (gates[cx].kind != GateKind::CX) {
        cx++;
    }
    // At most two local gates per qubit ahead of the CNOT and three after.
    std::map<uint32_t, int> before, after;
    for (size_t k = 0; k < gates.size(); k++) {
        if (k == cx) {
            continue;
        }
        (k < cx ? before : after)[gates[k].qubits[0]]++;
    }
    for (auto [q, c] : before) {
        EXPECT_LE(c, 2) << q;
    }
    for (auto [q, c] : after) {
        EXPECT_LE(c, 3) << q;
    }
}

TEST(encode, rejects_mismatched_coupling) {
    SynthesisSpec s = make_spec(initial_tableau(3), Metric::CX_COUNT, 1);
    s.coupling = builtin_topology("line", 4);
    EXPECT_THROW(encode(s), std::invalid_argument);
}

TEST(formula_size, two_qubits_one_layer) {
    SynthesisSpec s = make_spec(from_circuit(testing::two_cnot_example()), Metric::CX_COUNT, 1);
    Encoding enc = encode(s);
    const VariableLedger &v = enc.ledger;
    // State variables: x and z for 4 steps, 4 rows, 2 columns.
    EXPECT_EQ(v.z(0, 0, 0) - v.x(0, 0, 0), 32);
    EXPECT_EQ(v.px(0, 0, 0) - v.x(0, 0, 0), 64);
    // Propagation variables: px and pz for 3 transitions.
    EXPECT_EQ(v.pz(0, 0, 0) - v.px(0, 0, 0), 24);
    EXPECT_EQ(v.layer_gate(0, 0, LayerGate::I) - v.px(0, 0, 0), 48);
    FormulaSize size = formula_size(s);
    EXPECT_EQ(size.num_vars, enc.formula.num_vars());
    EXPECT_EQ(size.num_clauses, static_cast<int64_t>(enc.formula.num_clauses()));
}

TEST(formula_size, matches_construction_under_all_settings) {
    std::mt19937_64 rng(21);
    for (uint32_t n : {1u, 2u, 3u, 4u}) {
        Tableau t = from_circuit(testing::random_clifford_circuit(n, 20, rng));
        for (uint32_t d : {0u, 1u, 3u, 5u}) {
            for (int mask = 0; mask < 16; mask++) {
                EncodingOptions o{(mask & 1) != 0, (mask & 2) != 0, (mask & 4) != 0, (mask & 8) != 0};
                for (Metric m : {Metric::CX_COUNT, Metric::CX_DEPTH}) {
                    for (bool perm : {false, true}) {
                        SynthesisSpec s = make_spec(t, m, d, perm, o);
                        if (n >= 3 && mask == 5) {
                            s.coupling = builtin_topology("line", n);
                        }
                        Encoding enc = encode(s);
                        FormulaSize size = formula_size(s);
                        ASSERT_EQ(size.num_vars, enc.formula.num_vars()) << n << " " << d << " " << mask;
                        ASSERT_EQ(size.num_clauses, static_cast<int64_t>(enc.formula.num_clauses()))
                            << n << " " << d << " " << mask;
                    }
                }
            }
        }
    }
}

TEST(formula_size, no_layer_variables_at_zero) {
    SynthesisSpec s = make_spec(initial_tableau(2), Metric::CX_COUNT, 0);
    Encoding enc = encode(s);
    std::ostringstream comments;
    enc.ledger.write_comments(comments);
    std::string text = comments.str();
    for (const char *family : {"c cnot ", "c ctrl ", "c trgt ", "c i ", "c hs ", "c sh "}) {
        EXPECT_EQ(text.find(family), std::string::npos) << family;
    }
    EXPECT_EQ(enc.ledger.final_gate(0, FinalGate::I) - enc.ledger.x(0, 0, 0), 2 * 16 + 2 * 8);
}

TEST(formula_size, grows_linearly_in_makespan) {
    std::mt19937_64 rng(22);
    Tableau t3 = from_circuit(testing::random_clifford_circuit(3, 30, rng));
    for (Metric m : {Metric::CX_COUNT, Metric::CX_DEPTH}) {
        auto clauses = [&](uint32_t d) { return formula_size(make_spec(t3, m, d)).num_clauses; };
        int64_t c1 = clauses(1), c2 = clauses(2), c4 = clauses(4);
        EXPECT_EQ(c4 - c2, 2 * (c2 - c1));
        double ratio = static_cast<double>(c4) / static_cast<double>(c2);
        EXPECT_GT(ratio, 1.5);
        EXPECT_LE(ratio, 2.0);
    }
}

TEST(ledger, comments_cover_every_variable_once) {
    SynthesisSpec s = make_spec(from_circuit(testing::two_cnot_example()), Metric::CX_DEPTH, 3, true, all_options());
    Encoding enc = encode(s);
    std::ostringstream comments;
    enc.ledger.write_comments(comments);
    std::istringstream in(comments.str());
    std::string line;
    std::set<long> ids;
    while (std::getline(in, line)) {
        ASSERT_TRUE(line.starts_with("c "));
        long id = std::stol(line.substr(line.rfind(' ') + 1));
        EXPECT_TRUE(ids.insert(id).second) << line;
        EXPECT_GE(id, 1);
        EXPECT_LE(id, enc.formula.num_vars());
    }
    EXPECT_GT(ids.size(), 0u);
    EXPECT_EQ(*ids.rbegin(), static_cast<long>(ids.size()));
}

TEST(ledger, pair_index_is_lexicographic) {
    SynthesisSpec s = make_spec(initial_tableau(4), Metric::CX_COUNT, 1);
    Encoding enc = encode(s);
    uint32_t k = 0;
    for (uint32_t a = 0; a < 4; a++) {
        for (uint32_t b = a + 1; b < 4; b++) {
            EXPECT_EQ(enc.ledger.pair_index(a, b), k);
            EXPECT_EQ(enc.ledger.pair_at(k), std::make_pair(a, b));
            k++;
        }
    }
    EXPECT_EQ(enc.ledger.num_pairs(), 6u);
}

TEST(decode_model, rejects_broken_models) {
    SynthesisSpec s = make_spec(initial_tableau(2), Metric::CX_COUNT, 1);
    Encoding enc = encode(s);
    std::vector<bool> zeros(enc.formula.num_vars() + 1, false);
    EXPECT_THROW(decode_model(enc.ledger, zeros, s), InternalError);
}

TEST(decode_model, swap_needs_three_and_permutation_absorbs_it) {
    Tableau swap = from_circuit(decompose_circuit(Circuit(2, {Gate::swap(0, 1)})));
    EXPECT_EQ(run(make_spec(swap, Metric::CX_COUNT, 2)).status, SolveStatus::UNSAT);
    EXPECT_EQ(run(make_spec(swap, Metric::CX_COUNT, 3)).status, SolveStatus::SAT);
    Outcome p = run(make_spec(swap, Metric::CX_COUNT, 0, true));
    ASSERT_EQ(p.status, SolveStatus::SAT);
    EXPECT_EQ(p.decoded->permutation, Permutation({1, 0}));
}

// The encoder's SAT boundary sits at the oracle's optimum for every target
// and every combination of auxiliary constraints.
class OptionInvariance : public ::testing::TestWithParam<int> {};

TEST_P(OptionInvariance, status_at_optimum) {
    int mask = GetParam();
    EncodingOptions opts{(mask & 1) != 0, (mask & 2) != 0, (mask & 4) != 0, (mask & 8) != 0};
    std::mt19937_64 rng(100 + mask);
    for (int trial = 0; trial < 6; trial++) {
        uint32_t n = 2 + trial % 2;
        Tableau t = from_circuit(testing::random_clifford_circuit(n, 25, rng));
        for (Metric m : {Metric::CX_COUNT, Metric::CX_DEPTH}) {
            for (bool perm : {false, true}) {
                int opt = m == Metric::CX_COUNT ? min_cx_count(t, std::nullopt, perm)
                                                : min_cx_depth(t, std::nullopt, perm);
                ASSERT_GE(opt, 0);
                EXPECT_EQ(run(make_spec(t, m, opt, perm, opts)).status, SolveStatus::SAT)
                    << "mask " << mask << " metric " << metric_name(m) << " perm " << perm;
                if (opt > 0) {
                    EXPECT_EQ(run(make_spec(t, m, opt - 1, perm, opts)).status, SolveStatus::UNSAT)
                        << "mask " << mask << " metric " << metric_name(m) << " perm " << perm;
                }
            }
        }
    }
}

INSTANTIATE_TEST_SUITE_P(all_toggles, OptionInvariance, ::testing::Range(0, 16));

TEST(encode, coupling_soundness) {
    std::mt19937_64 rng(23);
    std::vector<CouplingGraph> graphs{builtin_topology("line", 3), builtin_topology("ring", 3),
                                      builtin_topology("line", 4), builtin_topology("ring", 4),
                                      grid_topology(2, 2)};
    for (const auto &g : graphs) {
        uint32_t n = g.num_qubits();
        std::vector<std::pair<uint32_t, uint32_t>> edges(g.edges().begin(), g.edges().end());
        for (int trial = 0; trial < 3; trial++) {
            Tableau t = from_circuit(testing::random_coupled_circuit(n, edges, 12, rng));
            for (Metric m : {Metric::CX_COUNT, Metric::CX_DEPTH}) {
                int opt = m == Metric::CX_COUNT ? min_cx_count(t, g) : min_cx_depth(t, g);
                SynthesisSpec s = make_spec(t, m, opt, false, {true, m == Metric::CX_DEPTH, false, true});
                s.coupling = g;
                Outcome o = run(s);
                EXPECT_EQ(o.status, SolveStatus::SAT);
                if (opt > 0) {
                    s.makespan_d = opt - 1;
                    EXPECT_EQ(run(s).status, SolveStatus::UNSAT);
                }
            }
        }
    }
}

TEST(encode, empty_coupling_forbids_every_cnot) {
    SynthesisSpec s = make_spec(from_circuit(Circuit(3, {Gate::cx(0, 1)})), Metric::CX_COUNT, 1);
    s.coupling = CouplingGraph(3);
    for (uint32_t d = 1; d <= 3; d++) {
        s.makespan_d = d;
        EXPECT_EQ(run(s).status, SolveStatus::UNSAT) << d;
        s.metric = Metric::CX_DEPTH;
        EXPECT_EQ(run(s).status, SolveStatus::UNSAT) << d;
        s.metric = Metric::CX_COUNT;
    }
}

TEST(encode, depth_layers_hold_parallel_cnots) {
    Tableau t = from_circuit(Circuit(4, {Gate::cx(0, 1), Gate::cx(2, 3)}));
    EXPECT_EQ(run(make_spec(t, Metric::CX_DEPTH, 1)).status, SolveStatus::SAT);
    EXPECT_EQ(run(make_spec(t, Metric::CX_COUNT, 1)).status, SolveStatus::UNSAT);
    EXPECT_EQ(run(make_spec(t, Metric::CX_COUNT, 2)).status, SolveStatus::SAT);
}

TEST(encode, dimacs_is_well_formed) {
    Encoding enc = encode(make_spec(from_circuit(testing::two_cnot_example()), Metric::CX_DEPTH, 2, true, all_options()));
    std::ostringstream text;
    enc.ledger.write_comments(text);
    enc.formula.write_dimacs(text);
    testing::ParsedCnf p = testing::parse_dimacs_text(text.str());
    EXPECT_EQ(p.num_vars, enc.formula.num_vars());
    EXPECT_EQ(p.clauses.size(), enc.formula.num_clauses());
}

TEST(metric, names) {
    EXPECT_EQ(parse_metric("cx-count"), Metric::CX_COUNT);
    EXPECT_EQ(parse_metric("cx-depth"), Metric::CX_DEPTH);
    EXPECT_STREQ(metric_name(Metric::CX_DEPTH), "cx-depth");
    EXPECT_THROW(parse_metric("depth"), std::invalid_argument);
}

}  // namespace
}  // namespace cliffsat
