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

#include "cli.h"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "cliffsat/coupling.h"
#include "cliffsat/errors.h"
#include "cliffsat/oracle.h"
#include "cliffsat/peephole.h"
#include "json.hpp"
#include "test_support.h"

namespace cliffsat {
namespace {

namespace fs = std::filesystem;

const char *EXAMPLE = R"(OPENQASM 2.0;
include "qelib1.inc";
qreg q[2];
cx q[0],q[1];
s q[1];
cx q[0],q[1];
x q[1];
)";

class CliTest : public ::testing::Test {
   protected:
    fs::path dir;

    void SetUp() override {
        const auto *info = ::testing::UnitTest::GetInstance()->current_test_info();
        dir = fs::temp_directory_path() / ("cliffsat_cli_" + std::string(info->name()) + "_" +
                                           std::to_string(::getpid()));
        fs::remove_all(dir);
        fs::create_directories(dir);
    }
    void TearDown() override {
        fs::remove_all(dir);
    }

    fs::path write(const std::string &name, const std::string &text) {
        fs::path p = dir / name;
        std::ofstream(p) << text;
        return p;
    }

    static std::string read(const fs::path &p) {
        std::ifstream in(p);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

    int run(std::vector<std::string> args, std::string *out_text = nullptr, std::string *err_text = nullptr) {
        std::vector<std::string> full{"cliffsat"};
        full.insert(full.end(), args.begin(), args.end());
        if (std::find(args.begin(), args.end(), "--solver") == args.end() && !args.empty() &&
            std::find(args.begin(), args.end(), "--verify-only") == args.end()) {
            std::string cmd;
            for (const auto &part : testing::test_solver().command) {
                cmd += (cmd.empty() ? "" : " ") + part;
            }
            full.push_back("--solver");
            full.push_back(cmd);
        }
        std::vector<const char *> argv;
        for (const auto &s : full) {
            argv.push_back(s.c_str());
        }
        std::ostringstream out, err;
        int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
        if (out_text) {
            *out_text = out.str();
        }
        if (err_text) {
            *err_text = err.str();
        }
        return code;
    }

    static std::vector<nlohmann::json> read_report(const fs::path &p) {
        std::vector<nlohmann::json> lines;
        std::istringstream in(read(p));
        std::string line;
        while (std::getline(in, line)) {
            if (!line.empty()) {
                lines.push_back(nlohmann::json::parse(line));
            }
        }
        return lines;
    }
};

TEST_F(CliTest, example_reduces_to_one_cnot) {
    fs::path in = write("in.qasm", EXAMPLE);
    fs::path out = dir / "out.qasm";
    fs::path report = dir / "report.jsonl";
    ASSERT_EQ(run({in.string(), "--metric", "cx-count", "-o", out.string(), "--report", report.string(), "-q"}), 0);

    Circuit result = parse_qasm(read(out));
    EXPECT_EQ(compute_metrics(result).cx_count, 1u);
    EXPECT_TRUE(equivalent(from_circuit(result), from_circuit(parse_qasm(EXAMPLE))));

    auto lines = read_report(report);
    ASSERT_GE(lines.size(), 2u);
    EXPECT_EQ(lines[0]["type"], "run");
    EXPECT_EQ(lines[0]["before"]["cx_count"], 2);
    EXPECT_EQ(lines[0]["after"]["cx_count"], 1);
    EXPECT_EQ(lines[0]["after"]["cx_depth"], compute_metrics(result).cx_depth);
    EXPECT_EQ(lines[0]["after"]["gate_count"], compute_metrics(result).gate_count);
    EXPECT_TRUE(lines[0]["qubit_map"].is_null());
    EXPECT_EQ(lines[1]["type"], "slice");
    EXPECT_EQ(lines[1]["status"], "OPTIMAL");
    EXPECT_FALSE(lines[1]["solve_log"].empty());
    EXPECT_FALSE(lines[0].contains("seconds"));
}

TEST_F(CliTest, stdout_output_and_summary) {
    fs::path in = write("in.qasm", EXAMPLE);
    std::string out, err;
    ASSERT_EQ(run({in.string(), "--metric", "cx-depth"}, &out, &err), 0);
    EXPECT_EQ(compute_metrics(parse_qasm(out)).cx_depth, 1u);
    EXPECT_NE(err.find("cx-depth 2 -> 1"), std::string::npos) << err;
}

TEST_F(CliTest, verify_only) {
    fs::path in = write("in.qasm", EXAMPLE);
    fs::path copy = write("copy.qasm", EXAMPLE);
    std::string out;
    EXPECT_EQ(run({"--verify-only", in.string(), copy.string()}, &out), 0);
    EXPECT_NE(out.find("verified"), std::string::npos);

    std::string tampered = EXAMPLE;
    tampered.replace(tampered.find("x q[1]"), 6, "z q[1]");
    fs::path bad = write("bad.qasm", tampered);
    EXPECT_EQ(run({"--verify-only", in.string(), bad.string()}), 1);

    fs::path opt = dir / "opt.qasm";
    ASSERT_EQ(run({in.string(), "--metric", "cx-count", "-o", opt.string(), "-q"}), 0);
    EXPECT_EQ(run({"--verify-only", in.string(), opt.string()}), 0);
}

TEST_F(CliTest, permutation_writes_qubit_map) {
    std::string swap = "OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[2];\n"
                       "cx q[0],q[1];\ncx q[1],q[0];\ncx q[0],q[1];\nt q[0];\n";
    fs::path in = write("swap.qasm", swap);
    fs::path out = dir / "out.qasm";
    fs::path report = dir / "r.jsonl";
    ASSERT_EQ(run({in.string(), "--metric", "cx-count", "--permute", "-o", out.string(), "--report",
                   report.string(), "-q"}),
              0);
    std::string text = read(out);
    auto map = cli::read_qubit_map(text, 2);
    ASSERT_TRUE(map.has_value());
    EXPECT_EQ(*map, Permutation({1, 0}));
    EXPECT_EQ(compute_metrics(parse_qasm(text)).cx_count, 0u);
    auto lines = read_report(report);
    EXPECT_EQ(lines[0]["qubit_map"], nlohmann::json::array({1, 0}));
    EXPECT_EQ(run({"--verify-only", in.string(), out.string()}), 0);

    // Dropping the map comment must make verification fail.
    std::string stripped;
    std::istringstream lines_in(text);
    std::string line;
    while (std::getline(lines_in, line)) {
        if (line.find("qubit-map") == std::string::npos) {
            stripped += line + "\n";
        }
    }
    fs::path bad = write("stripped.qasm", stripped);
    EXPECT_EQ(run({"--verify-only", in.string(), bad.string()}), 1);
}

TEST_F(CliTest, qubit_map_comment_round_trip) {
    Permutation p({2, 0, 1});
    std::string text = "OPENQASM 2.0;\n// " + cli::qubit_map_comment(p) + "\nqreg q[3];\n";
    EXPECT_EQ(cli::read_qubit_map(text, 3), p);
    EXPECT_FALSE(cli::read_qubit_map("qreg q[3];\n", 3).has_value());
    EXPECT_THROW(cli::read_qubit_map("// qubit-map: 0->0 1->0 2->2\n", 3), ParseError);
    EXPECT_THROW(cli::read_qubit_map("// qubit-map: 0->x\n", 1), ParseError);
}

TEST_F(CliTest, usage_errors) {
    fs::path in = write("in.qasm", EXAMPLE);
    EXPECT_EQ(run({}), 2);
    EXPECT_EQ(run({in.string()}), 2);
    EXPECT_EQ(run({in.string(), "--metric", "t-count"}), 2);
    EXPECT_EQ(run({in.string(), "--metric", "cx-count", "--gate-ordering", "maybe"}), 2);
    EXPECT_EQ(run({in.string(), "--metric", "cx-count", "--time-limit", "-1"}), 2);
    EXPECT_EQ(run({in.string(), "--metric", "cx-count", "--coupling", "line1"}), 2);
    EXPECT_EQ(run({in.string(), "--metric", "cx-count", "--coupling", "nowhere"}), 2);
    EXPECT_EQ(run({"--verify-only", in.string()}), 2);
    fs::path broken = write("broken.qasm", "OPENQASM 2.0;\nqreg q[2];\ncx q[0],q[5];\n");
    EXPECT_EQ(run({broken.string(), "--metric", "cx-count"}), 2);
}

TEST_F(CliTest, environment_errors) {
    fs::path in = write("in.qasm", EXAMPLE);
    EXPECT_EQ(run({(dir / "missing.qasm").string(), "--metric", "cx-count"}), 3);
    EXPECT_EQ(run({in.string(), "--metric", "cx-count", "--solver", "/nonexistent/solver"}), 3);
    EXPECT_EQ(run({in.string(), "--metric", "cx-count", "-q", "-o", (dir / "no" / "such" / "out.qasm").string()}),
              3);
}

TEST_F(CliTest, coupling_line4) {
    std::string text = "OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[4];\nh q[0];\ncx q[0],q[3];\ns q[3];\n";
    fs::path in = write("far.qasm", text);
    fs::path out = dir / "out.qasm";
    ASSERT_EQ(run({in.string(), "--metric", "cx-count", "--coupling", "line4", "-o", out.string(), "-q"}), 0);
    Circuit result = parse_qasm(read(out));
    CouplingGraph line = builtin_topology("line", 4);
    for (const auto &g : result.gates) {
        if (g.kind == GateKind::CX) {
            EXPECT_TRUE(line.connected(g.qubits[0], g.qubits[1])) << g.str();
        }
    }
    Circuit input = parse_qasm(text);
    EXPECT_TRUE(equivalent(from_circuit(result), from_circuit(input)));
    EXPECT_EQ(static_cast<int>(compute_metrics(result).cx_count), min_cx_count(from_circuit(input), line, false));
    EXPECT_EQ(run({"--verify-only", in.string(), out.string()}), 0);
}

TEST_F(CliTest, emit_cnf) {
    fs::path in = write("in.qasm", EXAMPLE);
    fs::path cnf = dir / "f.cnf";
    ASSERT_EQ(run({in.string(), "--metric", "cx-count", "--emit-cnf", cnf.string(), "-q"}), 0);
    std::string text = read(cnf);
    ASSERT_FALSE(text.empty());
    testing::ParsedCnf parsed = testing::parse_dimacs_text(text);
    EXPECT_GT(parsed.num_vars, 0);
    EXPECT_GT(parsed.clauses.size(), 0u);
    EXPECT_NE(text.find("c "), std::string::npos);
}

TEST_F(CliTest, deterministic_output) {
    std::mt19937_64 rng(71);
    Circuit c = testing::random_clifford_circuit(3, 30, rng);
    fs::path in = write("in.qasm", emit_qasm(c));
    std::vector<std::string> outputs, reports;
    for (int k = 0; k < 2; k++) {
        fs::path out = dir / ("out" + std::to_string(k) + ".qasm");
        fs::path rep = dir / ("rep" + std::to_string(k) + ".jsonl");
        ASSERT_EQ(run({in.string(), "--metric", "cx-depth", "--permute", "-o", out.string(), "--report",
                       rep.string(), "-q"}),
                  0);
        outputs.push_back(read(out));
        reports.push_back(read(rep));
    }
    EXPECT_EQ(outputs[0], outputs[1]);
    EXPECT_EQ(reports[0], reports[1]);
}

TEST_F(CliTest, idempotent_on_optimal_output) {
    std::mt19937_64 rng(72);
    Circuit c = testing::random_clifford_circuit(3, 30, rng);
    fs::path in = write("in.qasm", emit_qasm(c));
    fs::path once = dir / "once.qasm";
    fs::path twice = dir / "twice.qasm";
    ASSERT_EQ(run({in.string(), "--metric", "cx-count", "-o", once.string(), "-q"}), 0);
    ASSERT_EQ(run({once.string(), "--metric", "cx-count", "-o", twice.string(), "-q"}), 0);
    Metrics a = compute_metrics(parse_qasm(read(once)));
    Metrics b = compute_metrics(parse_qasm(read(twice)));
    EXPECT_EQ(a.cx_count, b.cx_count);
    EXPECT_EQ(b.cx_count, static_cast<uint64_t>(min_cx_count(from_circuit(c))));
}

TEST_F(CliTest, report_metrics_match_emitted_file) {
    std::mt19937_64 rng(73);
    for (int trial = 0; trial < 3; trial++) {
        Circuit c = testing::random_clifford_circuit(3, 20, rng);
        fs::path in = write("in.qasm", emit_qasm(c));
        fs::path out = dir / "out.qasm";
        fs::path rep = dir / "rep.jsonl";
        ASSERT_EQ(run({in.string(), "--metric", "cx-count", "--decompose", "-o", out.string(), "--report",
                       rep.string(), "-q"}),
                  0);
        Metrics m = compute_metrics(parse_qasm(read(out)));
        auto lines = read_report(rep);
        EXPECT_EQ(lines[0]["after"]["cx_count"], m.cx_count);
        EXPECT_EQ(lines[0]["after"]["cx_depth"], m.cx_depth);
        EXPECT_EQ(lines[0]["after"]["gate_count"], m.gate_count);
    }
}

}  // namespace
}  // namespace cliffsat
