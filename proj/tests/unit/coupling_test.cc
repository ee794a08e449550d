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

#include "cliffsat/coupling.h"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "cliffsat/errors.h"

namespace cliffsat {
namespace {

using EdgeSet = std::set<std::pair<uint32_t, uint32_t>>;

TEST(parse_coupling, edge_list) {
    CouplingGraph g = parse_coupling("0 1\n1 2\n2 3");
    EXPECT_EQ(g.num_qubits(), 4u);
    EXPECT_EQ(g.edges(), (EdgeSet{{0, 1}, {1, 2}, {2, 3}}));
    EXPECT_TRUE(g.connected(2, 1));
    EXPECT_FALSE(g.connected(0, 3));
}

TEST(parse_coupling, edge_list_comments_and_duplicates) {
    CouplingGraph g = parse_coupling("# header\n\n3 0   # trailing\n0 3\n\t1 0\n");
    EXPECT_EQ(g.num_qubits(), 4u);
    EXPECT_EQ(g.edges(), (EdgeSet{{0, 1}, {0, 3}}));
}

TEST(parse_coupling, json_deduplicates) {
    CouplingGraph g = parse_coupling(R"({"n": 2, "edges": [[0, 1], [1, 0]]})");
    EXPECT_EQ(g.num_qubits(), 2u);
    EXPECT_EQ(g.edges(), (EdgeSet{{0, 1}}));
}

TEST(parse_coupling, json_with_isolated_qubits) {
    CouplingGraph g = parse_coupling(R"({"n": 3, "edges": []})");
    EXPECT_EQ(g.num_qubits(), 3u);
    EXPECT_TRUE(g.edges().empty());
}

TEST(parse_coupling, errors) {
    EXPECT_THROW(parse_coupling("0 0\n"), ParseError);
    EXPECT_THROW(parse_coupling("0 x\n"), ParseError);
    EXPECT_THROW(parse_coupling("0 1 2\n"), ParseError);
    EXPECT_THROW(parse_coupling("-1 2\n"), ParseError);
    EXPECT_THROW(parse_coupling(R"({"n": 2, "edges": [[1, 1]]})"), ParseError);
    EXPECT_THROW(parse_coupling(R"({"n": 2, "edges": [[0, 2]]})"), RangeError);
    EXPECT_THROW(parse_coupling(R"({"edges": [[0, 1]]})"), ParseError);
    EXPECT_THROW(parse_coupling(R"({"n": 2, "edges": [[0, 1]])"), ParseError);
    try {
        parse_coupling("0 1\n1 q\n");
        FAIL();
    } catch (const ParseError &e) {
        EXPECT_EQ(e.line, 2u);
    }
}

TEST(parse_coupling, json_round_trip) {
    for (const auto &g : {builtin_topology("ring", 5), grid_topology(2, 3), CouplingGraph(4)}) {
        EXPECT_EQ(parse_coupling(coupling_to_json(g)), g);
    }
}

TEST(builtin_topology, examples) {
    EXPECT_EQ(builtin_topology("line", 4).edges(), (EdgeSet{{0, 1}, {1, 2}, {2, 3}}));
    EXPECT_EQ(builtin_topology("ring", 3).edges(), (EdgeSet{{0, 1}, {1, 2}, {0, 2}}));
    CouplingGraph grid = builtin_topology("grid(2,2)", std::nullopt);
    EXPECT_EQ(grid.num_qubits(), 4u);
    EXPECT_EQ(grid.edges().size(), 4u);
    EXPECT_EQ(builtin_topology("grid2x2", std::nullopt), grid);
    EXPECT_EQ(grid_topology(3, 4).edges().size(), 17u);
    EXPECT_EQ(builtin_topology("ring", 2).edges(), (EdgeSet{{0, 1}}));
}

TEST(builtin_topology, errors) {
    EXPECT_THROW(builtin_topology("torus", 4), std::invalid_argument);
    EXPECT_THROW(builtin_topology("line", std::nullopt), std::invalid_argument);
}

TEST(coupling_graph, edge_checks) {
    CouplingGraph g(3);
    EXPECT_THROW(g.add_edge(1, 1), std::invalid_argument);
    EXPECT_THROW(g.add_edge(0, 3), RangeError);
    g.add_edge(2, 0);
    EXPECT_TRUE(g.connected(0, 2));
    EXPECT_EQ(g.restricted(2).edges(), EdgeSet{});
    EXPECT_EQ(builtin_topology("line", 5).restricted(3), builtin_topology("line", 3));
}

TEST(resolve_coupling, names_and_files) {
    EXPECT_EQ(resolve_coupling("line4", 7), builtin_topology("line", 4));
    EXPECT_EQ(resolve_coupling("ring", 5), builtin_topology("ring", 5));
    EXPECT_EQ(resolve_coupling("grid2x3", 1), grid_topology(2, 3));

    auto path = std::filesystem::temp_directory_path() / "cliffsat-coupling-test.txt";
    {
        std::ofstream out(path);
        out << "0 2\n";
    }
    EXPECT_EQ(resolve_coupling(path.string(), 3).edges(), (EdgeSet{{0, 2}}));
    std::filesystem::remove(path);
    EXPECT_THROW(resolve_coupling("no-such-platform", 3), std::invalid_argument);
    EXPECT_THROW(load_coupling("/nonexistent/coupling.txt"), EnvironmentError);
}

TEST(resolve_coupling, shipped_platforms) {
    std::filesystem::path dir = CLIFFSAT_PLATFORM_DIR;
    struct Want {
        const char *name;
        uint32_t n;
        size_t edges;
    };
    for (const Want &w : {Want{"sycamore54", 54, 88}, Want{"rigetti80", 80, 106}, Want{"eagle127", 127, 144}}) {
        CouplingGraph g = resolve_coupling(w.name, 1, dir);
        EXPECT_EQ(g.num_qubits(), w.n) << w.name;
        EXPECT_EQ(g.edges().size(), w.edges) << w.name;
        std::vector<int> degree(w.n, 0);
        for (auto [a, b] : g.edges()) {
            degree[a]++;
            degree[b]++;
        }
        for (uint32_t q = 0; q < w.n; q++) {
            EXPECT_GE(degree[q], 1) << w.name << " qubit " << q;
            EXPECT_LE(degree[q], 4) << w.name << " qubit " << q;
        }
    }
}

}  // namespace
}  // namespace cliffsat
