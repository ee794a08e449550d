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

// Acceptance runner. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion that could be evaluated failed. A criterion whose
// input files are not present is reported as FAIL but does not change the
// exit status.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "cli.h"
#include "cliffsat/cnf.h"
#include "cliffsat/coupling.h"
#include "cliffsat/encoder.h"
#include "cliffsat/errors.h"
#include "cliffsat/oracle.h"
#include "cliffsat/peephole.h"
#include "cliffsat/synthesizer.h"
#include "test_support.h"

namespace cliffsat {
namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

double since(Clock::time_point t) {
    return std::chrono::duration<double>(Clock::now() - t).count();
}

struct Verdict {
    bool pass = false;
    std::string detail;
    bool missing_inputs = false;
};

const SolverConfig &solver() {
    static SolverConfig s = testing::test_solver();
    return s;
}

SynthesisOptions synth_options(Metric m, bool perm) {
    SynthesisOptions o;
    o.metric = m;
    o.allow_permutation = perm;
    o.solver = solver();
    o.encoding = {true, m == Metric::CX_DEPTH, false, true};
    return o;
}

// Every synthesized circuit seen by the runner goes through here.
struct ClosureTally {
    size_t checked = 0;
    size_t failed = 0;
    void check(const Tableau &target, const SynthesisOutcome &out) {
        if (!out.circuit) {
            return;
        }
        checked++;
        Tableau want = permute_columns(target, out.permutation);
        if (!equivalent(from_circuit(*out.circuit), want)) {
            failed++;
        }
    }
} closure;

std::string fmt(double v) {
    std::ostringstream ss;
    ss.precision(3);
    ss << std::fixed << v;
    return ss.str();
}

Verdict criterion_1() {
    Circuit input = testing::two_cnot_example();
    auto t0 = Clock::now();
    PeepholeOptions po;
    po.synthesis = synth_options(Metric::CX_COUNT, false);
    PeepholeResult r = optimize_circuit(input, po);
    double secs = since(t0);
    uint64_t cx = compute_metrics(r.circuit).cx_count;
    bool same = equivalent(from_circuit(r.circuit), from_circuit(input));
    return {cx == 1 && same && secs < 1.0,
            "cx " + std::to_string(compute_metrics(input).cx_count) + " -> " + std::to_string(cx) +
                ", tableau incl. signs " + (same ? "equal" : "DIFFERENT") + ", " + fmt(secs) + " s (limit 1 s)"};
}

Verdict criterion_2(std::vector<std::pair<int, int>> &count_depth_pairs) {
    std::mt19937_64 rng(20260214);
    size_t targets = 0, mismatches = 0, ref_mismatches = 0;
    auto t0 = Clock::now();
    for (int k = 0; k < 200; k++) {
        uint32_t n = k < 60 ? 2 : 3;
        Circuit c = testing::random_clifford_circuit(n, 12 * n * n, rng);
        Tableau target = from_circuit(c);
        testing::RefSymplectic ref = testing::RefSymplectic::of(c);
        targets++;
        for (bool perm : {false, true}) {
            int want_count = min_cx_count(target, std::nullopt, perm);
            int want_depth = min_cx_depth(target, std::nullopt, perm);
            if (testing::ref_min_cx(ref, std::nullopt, perm) != want_count) {
                ref_mismatches++;
            }
            SynthesisOutcome oc = synthesize(target, synth_options(Metric::CX_COUNT, perm));
            SynthesisOutcome od = synthesize(target, synth_options(Metric::CX_DEPTH, perm));
            closure.check(target, oc);
            closure.check(target, od);
            if (oc.status != SynthesisStatus::OPTIMAL || static_cast<int>(oc.achieved) != want_count ||
                static_cast<int>(compute_metrics(*oc.circuit).cx_count) != want_count) {
                mismatches++;
            }
            if (od.status != SynthesisStatus::OPTIMAL || static_cast<int>(od.achieved) != want_depth ||
                static_cast<int>(compute_metrics(*od.circuit).cx_depth) != want_depth) {
                mismatches++;
            }
            count_depth_pairs.push_back({want_count, want_depth});
            count_depth_pairs.push_back({static_cast<int>(compute_metrics(*oc.circuit).cx_count),
                                         static_cast<int>(compute_metrics(*oc.circuit).cx_depth)});
        }
    }
    double secs = since(t0);
    return {mismatches == 0 && ref_mismatches == 0 && secs < 600,
            std::to_string(targets) + " targets x {count, depth} x {fixed, permuted}: " + std::to_string(mismatches) +
                " solver/oracle mismatches, " + std::to_string(ref_mismatches) + " oracle/reference mismatches, " +
                fmt(secs) + " s (limit 600 s)"};
}

Verdict criterion_3() {
    std::mt19937_64 rng(20260315);
    std::ostringstream detail;
    bool ok = true;
    double worst4 = 0;
    size_t oracle_checked = 0;
    for (int k = 0; k < 5; k++) {
        Tableau target = from_circuit(testing::random_clifford_circuit(4, 240, rng));
        SynthesisOptions o = synth_options(Metric::CX_COUNT, false);
        o.time_limit = 60;
        auto t0 = Clock::now();
        SynthesisOutcome out = synthesize(target, o);
        double secs = since(t0);
        closure.check(target, out);
        worst4 = std::max(worst4, secs);
        bool good = out.status == SynthesisStatus::OPTIMAL && secs < 60;
        try {
            int want = min_cx_count(target);
            oracle_checked++;
            good = good && static_cast<int>(out.achieved) == want;
        } catch (const CapabilityError &) {
        }
        ok = ok && good;
    }
    size_t solved5 = 0;
    std::vector<std::string> times5;
    for (int k = 0; k < 5; k++) {
        Tableau target = from_circuit(testing::random_clifford_circuit(5, 400, rng));
        SynthesisOptions o = synth_options(Metric::CX_COUNT, false);
        o.time_limit = 600;
        auto t0 = Clock::now();
        SynthesisOutcome out = synthesize(target, o);
        double secs = since(t0);
        closure.check(target, out);
        if (out.status == SynthesisStatus::OPTIMAL && secs < 600) {
            solved5++;
            times5.push_back(fmt(secs) + "s(d=" + std::to_string(out.achieved) + ")");
        } else {
            times5.push_back("timeout");
        }
    }
    ok = ok && solved5 >= 3;
    detail << "4 qubits: 5/5 required, worst " << fmt(worst4) << " s (limit 60 s), " << oracle_checked
           << " cross-checked by oracle; 5 qubits: " << solved5 << "/5 optimal within 600 s (need 3) [";
    for (size_t i = 0; i < times5.size(); i++) {
        detail << (i ? " " : "") << times5[i];
    }
    detail << "]";
    return {ok, detail.str()};
}

fs::path asset_dir() {
    if (const char *env = std::getenv("CLIFFSAT_ASSET_DIR")) {
        return env;
    }
    return CLIFFSAT_ASSET_DIR;
}

Verdict criterion_4() {
    struct Check {
        std::string name;
        Metric metric;
        uint64_t bound;
    };
    std::vector<Check> checks{{"mod5_4", Metric::CX_COUNT, 19},
                              {"mod5_4", Metric::CX_DEPTH, 14},
                              {"qft_4", Metric::CX_COUNT, 45},
                              {"tof_3", Metric::CX_COUNT, 18}};
    std::vector<std::string> missing;
    for (const auto &c : checks) {
        fs::path p = asset_dir() / (c.name + ".qasm");
        if (!fs::exists(p) && std::find(missing.begin(), missing.end(), c.name) == missing.end()) {
            missing.push_back(c.name);
        }
    }
    if (!missing.empty()) {
        std::string names;
        for (const auto &m : missing) {
            names += (names.empty() ? "" : ", ") + m + ".qasm";
        }
        return {false, "benchmark circuits not found in " + asset_dir().string() + " (" + names + ")", true};
    }
    bool ok = true;
    std::ostringstream detail;
    for (const auto &c : checks) {
        std::ifstream in(asset_dir() / (c.name + ".qasm"));
        std::stringstream ss;
        ss << in.rdbuf();
        Circuit circuit = parse_qasm(ss.str());
        PeepholeOptions po;
        po.synthesis = synth_options(c.metric, false);
        po.deadline = Clock::now() + std::chrono::seconds(600);
        auto t0 = Clock::now();
        PeepholeResult r = optimize_circuit(circuit, po);
        double secs = since(t0);
        Metrics before = compute_metrics(circuit), after = compute_metrics(r.circuit);
        uint64_t b = c.metric == Metric::CX_COUNT ? before.cx_count : before.cx_depth;
        uint64_t a = c.metric == Metric::CX_COUNT ? after.cx_count : after.cx_depth;
        bool good = a <= c.bound && secs < 600 && verify_rewrite(circuit, r.circuit, r.final_map, false).ok;
        ok = ok && good;
        detail << c.name << " " << metric_name(c.metric) << " " << b << " -> " << a << " (need <= " << c.bound
               << ", " << fmt(secs) << " s); ";
    }
    return {ok, detail.str()};
}

Verdict criterion_5(const std::vector<std::pair<int, int>> &count_depth_pairs) {
    std::vector<std::string> failed;

    // (a) cardinality encodings, exhaustively.
    bool card = true;
    for (int m = 1; m <= 8; m++) {
        for (int kind = 0; kind < 3; kind++) {
            CnfFormula f;
            std::vector<Lit> v;
            for (int i = 0; i < m; i++) {
                v.push_back(f.new_var());
            }
            if (kind == 0) {
                exactly_one(f, v);
            } else if (kind == 1) {
                at_most_one(f, v);
            } else {
                at_least_one(f, v);
            }
            std::set<uint64_t> got = testing::projected_models(f, m);
            for (uint64_t a = 0; a < (uint64_t{1} << m); a++) {
                int pc = std::popcount(a);
                bool want = kind == 0 ? pc == 1 : kind == 1 ? pc <= 1 : pc >= 1;
                card = card && (got.count(a) == 1) == want;
            }
        }
    }
    if (!card) {
        failed.push_back("a");
    }

    // (b) involutions and HSH = SHS on x, z.
    bool inv = true;
    std::mt19937_64 rng(5);
    for (int k = 0; k < 50; k++) {
        Tableau t = from_circuit(testing::random_clifford_circuit(3, 20, rng));
        for (uint32_t q = 0; q < 3; q++) {
            for (Gate g : {Gate::h(q), Gate::x(q), Gate::y(q), Gate::z(q), Gate::cx(q, (q + 1) % 3)}) {
                inv = inv && equivalent(apply_gate(apply_gate(t, g), g), t);
            }
            Tableau hsh = apply_gate(apply_gate(apply_gate(t, Gate::h(q)), Gate::s(q)), Gate::h(q));
            Tableau shs = apply_gate(apply_gate(apply_gate(t, Gate::s(q)), Gate::h(q)), Gate::s(q));
            inv = inv && equivalent_xz(hsh, shs);
        }
    }
    if (!inv) {
        failed.push_back("b");
    }

    // (d) coupling soundness on line, ring and grid graphs.
    bool coupled = true;
    std::vector<CouplingGraph> graphs{builtin_topology("line", 3), builtin_topology("ring", 4),
                                      grid_topology(2, 2), builtin_topology("line", 4)};
    for (const auto &g : graphs) {
        for (int k = 0; k < 4; k++) {
            Tableau target = from_circuit(testing::random_clifford_circuit(g.num_qubits(), 30, rng));
            for (Metric m : {Metric::CX_COUNT, Metric::CX_DEPTH}) {
                SynthesisOptions o = synth_options(m, false);
                o.coupling = g;
                SynthesisOutcome out = synthesize(target, o);
                closure.check(target, out);
                coupled = coupled && out.circuit.has_value();
                if (out.circuit) {
                    for (const auto &gate : out.circuit->gates) {
                        if (gate.kind == GateKind::CX && !g.connected(gate.qubits[0], gate.qubits[1])) {
                            coupled = false;
                        }
                    }
                }
                if (g.num_qubits() <= 3 && m == Metric::CX_COUNT) {
                    coupled = coupled && static_cast<int>(out.achieved) == min_cx_count(target, g, false);
                }
            }
        }
    }
    if (!coupled) {
        failed.push_back("d");
    }

    // (e) depth bounded by count, both for circuits and for optima.
    bool depth = !count_depth_pairs.empty();
    for (auto [c, d] : count_depth_pairs) {
        depth = depth && d <= c;
    }
    if (!depth) {
        failed.push_back("e");
    }

    // (f) SAT/UNSAT status at the optimum under every encoder toggle.
    bool invariant = true;
    for (int k = 0; k < 6; k++) {
        uint32_t n = 2 + k % 2;
        Tableau target = from_circuit(testing::random_clifford_circuit(n, 30, rng));
        for (Metric m : {Metric::CX_COUNT, Metric::CX_DEPTH}) {
            int opt = m == Metric::CX_COUNT ? min_cx_count(target) : min_cx_depth(target);
            for (int mask = 0; mask < 16; mask++) {
                EncodingOptions eo{bool(mask & 1), bool(mask & 2), bool(mask & 4), bool(mask & 8)};
                for (int d : {opt - 1, opt}) {
                    if (d < 0) {
                        continue;
                    }
                    SynthesisSpec spec{target, m, static_cast<uint32_t>(d), false, std::nullopt, eo};
                    Encoding enc = encode(spec);
                    SolverResult r = solve(enc.formula, solver(), 60);
                    invariant = invariant && r.status == (d == opt ? SolveStatus::SAT : SolveStatus::UNSAT);
                    if (r.status == SolveStatus::SAT) {
                        DecodedCircuit dec = decode_model(enc.ledger, r.model, spec);
                        closure.checked++;
                        if (!equivalent_xz(from_circuit(dec.circuit), target)) {
                            closure.failed++;
                        }
                    }
                }
            }
        }
    }
    if (!invariant) {
        failed.push_back("f");
    }

    // (c) every SAT model produced above decoded and re-simulated correctly.
    if (closure.failed != 0 || closure.checked == 0) {
        failed.push_back("c");
    }

    std::string list;
    for (const auto &f : failed) {
        list += (list.empty() ? "" : ",") + f;
    }
    return {failed.empty(), "(a) cardinality (b) gate identities (c) closure over " + std::to_string(closure.checked) +
                                " decoded circuits (d) coupling (e) depth <= count (f) toggle invariance" +
                                (failed.empty() ? "" : "; failing: " + list)};
}

Verdict criterion_6() {
    fs::path dir = fs::temp_directory_path() / ("cliffsat_acceptance_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    std::string qasm =
        "OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[3];\ncreg c[3];\n"
        "h q[0];\ncx q[0],q[1];\ncx q[1],q[2];\ns q[2];\ncx q[0],q[2];\nt q[1];\ncx q[1],q[0];\n"
        "cx q[2],q[1];\nh q[2];\ncx q[0],q[1];\nrz(0.25) q[0];\ncx q[2],q[0];\ncx q[0],q[1];\nmeasure q -> c;\n";
    std::ofstream(dir / "in.qasm") << qasm;
    std::string cmd;
    for (const auto &part : solver().command) {
        cmd += (cmd.empty() ? "" : " ") + part;
    }
    auto read = [](const fs::path &p) {
        std::ifstream in(p);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };
    bool ok = true;
    std::string detail;
    for (std::string metric : {"cx-count", "cx-depth"}) {
        for (bool perm : {false, true}) {
            std::vector<std::string> outs, reps;
            for (int k = 0; k < 2; k++) {
                std::string out = (dir / ("out" + std::to_string(k) + ".qasm")).string();
                std::string rep = (dir / ("rep" + std::to_string(k) + ".jsonl")).string();
                std::vector<std::string> args{"cliffsat", (dir / "in.qasm").string(), "--metric", metric, "-o", out,
                                              "--report", rep, "--solver", cmd, "-q"};
                if (perm) {
                    args.push_back("--permute");
                }
                std::vector<const char *> argv;
                for (const auto &a : args) {
                    argv.push_back(a.c_str());
                }
                std::ostringstream so, se;
                if (cli::run(static_cast<int>(argv.size()), argv.data(), so, se) != 0) {
                    ok = false;
                }
                outs.push_back(read(out));
                reps.push_back(read(rep));
            }
            ok = ok && !outs[0].empty() && outs[0] == outs[1] && reps[0] == reps[1];
        }
    }
    fs::remove_all(dir);
    detail = "two runs per {cx-count, cx-depth} x {fixed, permuted}: output QASM and report " +
             std::string(ok ? "byte-identical" : "DIFFER");
    return {ok, detail};
}

}  // namespace
}  // namespace cliffsat

int main() {
    using namespace cliffsat;
    std::vector<std::pair<int, int>> pairs;
    std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
        {"1 worked example", [] { return criterion_1(); }},
        {"2 oracle equivalence, 2-3 qubits", [&] { return criterion_2(pairs); }},
        {"3 scaling, 4 and 5 qubits", [] { return criterion_3(); }},
        {"4 benchmark spot checks", [] { return criterion_4(); }},
        {"5 property suites", [&] { return criterion_5(pairs); }},
        {"6 determinism", [] { return criterion_6(); }},
    };
    int failures = 0;
    for (const auto &[name, fn] : criteria) {
        Verdict v;
        try {
            v = fn();
        } catch (const std::exception &e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        std::cout << "criterion " << name << ": " << (v.pass ? "PASS" : "FAIL") << " - " << v.detail;
        if (!v.pass && v.missing_inputs) {
            std::cout << " [not evaluated]";
        }
        std::cout << std::endl;
        if (!v.pass && !v.missing_inputs) {
            failures++;
        }
    }
    return failures == 0 ? 0 : 1;
}
