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

#include "cliffsat/cnf.h"

#include <gtest/gtest.h>

#include <bit>
#include <filesystem>
#include <fstream>
#include <numeric>

#include "cliffsat/errors.h"
#include "test_support.h"

namespace cliffsat {
namespace {

std::vector<Lit> fresh(CnfFormula &f, int count) {
    Lit first = f.new_vars(count);
    std::vector<Lit> v(count);
    std::iota(v.begin(), v.end(), first);
    return v;
}

CnfFormula pigeonhole(int holes) {
    CnfFormula f;
    int pigeons = holes + 1;
    auto var = [&](int p, int h) { return p * holes + h + 1; };
    f.new_vars(pigeons * holes);
    for (int p = 0; p < pigeons; p++) {
        std::vector<Lit> c;
        for (int h = 0; h < holes; h++) {
            c.push_back(var(p, h));
        }
        f.add_clause(c);
    }
    for (int h = 0; h < holes; h++) {
        for (int p = 0; p < pigeons; p++) {
            for (int q = p + 1; q < pigeons; q++) {
                f.add_clause({-var(p, h), -var(q, h)});
            }
        }
    }
    return f;
}

TEST(new_vars, examples) {
    CnfFormula f;
    EXPECT_EQ(f.new_vars(3), 1);
    EXPECT_EQ(f.num_vars(), 3);
    CnfFormula g;
    g.new_vars(10);
    EXPECT_EQ(g.new_vars(1), 11);
    EXPECT_EQ(g.num_vars(), 11);
    EXPECT_THROW(g.new_vars(0), std::invalid_argument);
    EXPECT_THROW(g.new_vars(-2), std::invalid_argument);
}

TEST(add_clause, rejects_bad_literals) {
    CnfFormula f;
    f.new_vars(2);
    EXPECT_THROW(f.add_clause({1, 0}), RangeError);
    EXPECT_THROW(f.add_clause({3}), RangeError);
    EXPECT_THROW(f.add_clause({-3}), RangeError);
    f.add_clause({1, -2});
    EXPECT_EQ(f.num_clauses(), 1u);
}

TEST(exactly_one, single_literal_is_a_unit_clause) {
    CnfFormula f;
    Lit a = f.new_var();
    exactly_one(f, std::vector<Lit>{a});
    ASSERT_EQ(f.num_clauses(), 1u);
    EXPECT_EQ(std::vector<Lit>(f.clause(0).begin(), f.clause(0).end()), std::vector<Lit>{a});
    EXPECT_EQ(f.num_vars(), 1);
}

TEST(exactly_one, two_literals) {
    CnfFormula f;
    auto v = fresh(f, 2);
    exactly_one(f, v);
    EXPECT_EQ(testing::projected_models(f, 2), (std::set<uint64_t>{0b01, 0b10}));
}

TEST(exactly_one, five_literals_with_four_auxiliaries) {
    CnfFormula f;
    auto v = fresh(f, 5);
    exactly_one(f, v);
    EXPECT_EQ(f.num_vars(), 9);
    std::set<uint64_t> want;
    for (int k = 0; k < 5; k++) {
        want.insert(uint64_t{1} << k);
    }
    EXPECT_EQ(testing::projected_models(f, 5), want);
}

TEST(exactly_one, rejects_empty) {
    CnfFormula f;
    EXPECT_THROW(exactly_one(f, std::vector<Lit>{}), std::invalid_argument);
}

TEST(cardinality, truth_tables_sizes_one_to_eight) {
    for (int m = 1; m <= 8; m++) {
        std::set<uint64_t> one_hot, at_most;
        for (uint64_t a = 0; a < (uint64_t{1} << m); a++) {
            if (std::popcount(a) == 1) {
                one_hot.insert(a);
            }
            if (std::popcount(a) <= 1) {
                at_most.insert(a);
            }
        }
        CnfFormula eo;
        exactly_one(eo, fresh(eo, m));
        EXPECT_EQ(testing::projected_models(eo, m), one_hot) << "EO size " << m;
        EXPECT_EQ(eo.num_vars(), m + std::max(0, m - 1)) << m;

        CnfFormula amo;
        at_most_one(amo, fresh(amo, m));
        EXPECT_EQ(testing::projected_models(amo, m), at_most) << "AMO size " << m;

        CnfFormula alo;
        at_least_one(alo, fresh(alo, m));
        std::set<uint64_t> nonzero;
        for (uint64_t a = 1; a < (uint64_t{1} << m); a++) {
            nonzero.insert(a);
        }
        EXPECT_EQ(testing::projected_models(alo, m), nonzero) << "ALO size " << m;
    }
}

TEST(cardinality, negated_literals) {
    CnfFormula f;
    auto v = fresh(f, 4);
    std::vector<Lit> neg{-v[0], -v[1], -v[2], -v[3]};
    exactly_one(f, neg);
    std::set<uint64_t> want{0b1110, 0b1101, 0b1011, 0b0111};
    EXPECT_EQ(testing::projected_models(f, 4), want);
}

TEST(at_most_one, empty_and_three) {
    CnfFormula f;
    at_most_one(f, std::vector<Lit>{});
    EXPECT_EQ(f.num_clauses(), 0u);
    auto v = fresh(f, 3);
    at_most_one(f, v);
    EXPECT_EQ(testing::projected_models(f, 3), (std::set<uint64_t>{0, 1, 2, 4}));
}

TEST(at_least_one, two_literals) {
    CnfFormula f;
    auto v = fresh(f, 2);
    at_least_one(f, v);
    ASSERT_EQ(f.num_clauses(), 1u);
    EXPECT_EQ(std::vector<Lit>(f.clause(0).begin(), f.clause(0).end()), v);
}

TEST(links, equiv_and_xor3) {
    CnfFormula f;
    auto v = fresh(f, 2);
    link_equiv(f, v[0], v[1]);
    EXPECT_EQ(testing::projected_models(f, 2), (std::set<uint64_t>{0b00, 0b11}));

    CnfFormula g;
    auto w = fresh(g, 3);
    link_xor3(g, w[0], w[1], w[2]);
    std::set<uint64_t> want;
    for (uint64_t a = 0; a < 8; a++) {
        bool p = a & 1, q = (a >> 1) & 1, r = (a >> 2) & 1;
        if (p == (q == r)) {
            want.insert(a);
        }
    }
    EXPECT_EQ(testing::projected_models(g, 3), want);
    EXPECT_EQ(want.size(), 4u);
}

TEST(links, two_xor3_express_parity_of_three) {
    CnfFormula f;
    auto v = fresh(f, 5);  // w a b c t
    Lit w = v[0], a = v[1], b = v[2], c = v[3], t = v[4];
    link_xor3(f, t, a, b);
    link_xor3(f, w, t, c);
    std::vector<bool> asg(7);
    for (uint64_t m = 0; m < 64; m++) {
        for (int k = 1; k <= 6; k++) {
            asg[k] = (m >> (k - 1)) & 1;
        }
        if (testing::satisfies(f, asg)) {
            EXPECT_EQ(asg[w], asg[a] ^ asg[b] ^ asg[c]);
            EXPECT_EQ(asg[t], asg[a] == asg[b]);
        }
    }
    // Every (a, b, c) extends to exactly one model.
    std::set<uint64_t> seen;
    for (uint64_t proj : testing::projected_models(f, 4)) {
        seen.insert(proj >> 1);
    }
    EXPECT_EQ(seen.size(), 8u);
}

TEST(dimacs, examples) {
    CnfFormula f;
    f.new_var();
    f.add_clause({1});
    EXPECT_EQ(f.to_dimacs(), "p cnf 1 1\n1 0\n");
    EXPECT_EQ(CnfFormula().to_dimacs(), "p cnf 0 0\n");
    CnfFormula g;
    g.new_vars(2);
    g.add_clause({1, -2});
    g.add_clause({2});
    EXPECT_EQ(g.to_dimacs(), "p cnf 2 2\n1 -2 0\n2 0\n");
}

TEST(dimacs, independent_reader_round_trip) {
    CnfFormula f;
    auto v = fresh(f, 6);
    exactly_one(f, v);
    link_xor3(f, v[0], -v[1], v[2]);
    f.add_clause({-v[5]});
    testing::ParsedCnf p = testing::parse_dimacs_text(f.to_dimacs());
    EXPECT_EQ(p.num_vars, f.num_vars());
    ASSERT_EQ(p.clauses.size(), f.num_clauses());
    for (size_t k = 0; k < f.num_clauses(); k++) {
        EXPECT_EQ(p.clauses[k], std::vector<int>(f.clause(k).begin(), f.clause(k).end()));
    }
}

TEST(solve, trivial_sat_and_unsat) {
    CnfFormula f;
    Lit a = f.new_var();
    f.add_clause({a});
    SolverResult r = solve(f, testing::test_solver(), 30);
    ASSERT_EQ(r.status, SolveStatus::SAT);
    EXPECT_TRUE(r.value(a));
    EXPECT_FALSE(r.value(-a));
    EXPECT_TRUE(testing::satisfies(f, r.model));

    f.add_clause({-a});
    EXPECT_EQ(solve(f, testing::test_solver(), 30).status, SolveStatus::UNSAT);
}

TEST(solve, model_satisfies_formula) {
    CnfFormula f;
    auto v = fresh(f, 12);
    exactly_one(f, std::vector<Lit>(v.begin(), v.begin() + 6));
    exactly_one(f, std::vector<Lit>(v.begin() + 6, v.end()));
    f.add_clause({-v[0]});
    f.add_clause({-v[11], -v[5]});
    SolverResult r = solve(f, testing::test_solver(), 30);
    ASSERT_EQ(r.status, SolveStatus::SAT);
    EXPECT_TRUE(testing::satisfies(f, r.model));
}

TEST(solve, hard_formula_times_out) {
    CnfFormula f = pigeonhole(11);
    SolverResult r = solve(f, testing::test_solver(), 0.01);
    EXPECT_EQ(r.status, SolveStatus::TIMEOUT);
    EXPECT_LT(r.wall_time, 5.0);
}

TEST(solve, missing_solver_is_environment_error) {
    SolverConfig c;
    c.command = {"/nonexistent/cliffsat-solver"};
    CnfFormula f;
    EXPECT_THROW(solve(f, c, 5), EnvironmentError);
    EXPECT_THROW(solve(f, SolverConfig{}, 5), EnvironmentError);
}

TEST(solve, protocol_checks) {
    CnfFormula f;
    f.new_var();
    SolverConfig garbage;
    garbage.command = {"/bin/sh", "-c", "echo hello; exit 10", "sh"};
    EXPECT_THROW(solve(f, garbage, 5), ProtocolError);
    SolverConfig contradiction;
    contradiction.command = {"/bin/sh", "-c", "echo 's UNSATISFIABLE'; exit 10", "sh"};
    EXPECT_THROW(solve(f, contradiction, 5), ProtocolError);
    SolverConfig crash;
    crash.command = {"/bin/sh", "-c", "exit 3", "sh"};
    EXPECT_THROW(solve(f, crash, 5), EnvironmentError);
    SolverConfig fake_sat;
    fake_sat.command = {"/bin/sh", "-c", "echo 's SATISFIABLE'; echo 'v -1 0'; exit 10", "sh"};
    SolverResult r = solve(f, fake_sat, 5);
    ASSERT_EQ(r.status, SolveStatus::SAT);
    EXPECT_FALSE(r.value(1));
}

TEST(solve, keeps_scratch_files_on_request) {
    auto dir = std::filesystem::temp_directory_path() / "cliffsat-cnf-test-keep";
    std::filesystem::remove_all(dir);
    SolverConfig c = testing::test_solver();
    c.scratch_dir = dir;
    c.keep_files = true;
    CnfFormula f;
    f.new_var();
    f.add_clause({1});
    solve(f, c, 30);
    int cnf_files = 0;
    for (const auto &e : std::filesystem::directory_iterator(dir)) {
        if (e.path().extension() == ".cnf") {
            cnf_files++;
            std::ifstream in(e.path());
            std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
            EXPECT_EQ(text, f.to_dimacs());
        }
    }
    EXPECT_EQ(cnf_files, 1);
    c.keep_files = false;
    std::filesystem::remove_all(dir);
    solve(f, c, 30);
    EXPECT_TRUE(std::filesystem::is_empty(dir));
    std::filesystem::remove_all(dir);
}

TEST(solver_config, split_command) {
    EXPECT_EQ(SolverConfig::split_command("  kissat  -q --x=1 "), (std::vector<std::string>{"kissat", "-q", "--x=1"}));
    EXPECT_TRUE(SolverConfig::split_command("   ").empty());
}

}  // namespace
}  // namespace cliffsat
