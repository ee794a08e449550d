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

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <regex>
#include <sstream>

#include "CLI11.hpp"
#include "cliffsat/circuit.h"
#include "cliffsat/coupling.h"
#include "cliffsat/errors.h"
#include "cliffsat/peephole.h"
#include "cliffsat/synthesizer.h"
#include "json.hpp"

namespace cliffsat::cli {

namespace {

using Json = nlohmann::ordered_json;

struct RunConfig {
    std::string input;
    std::string candidate;
    std::string output;
    std::string metric;
    std::string search = "forward";
    bool permute = false;
    std::string coupling;
    std::string solver;
    double time_limit = 600;
    double slice_time_limit = 600;
    std::string gate_ordering = "on";
    std::string cycle_breaking;
    std::string redundant_eo = "off";
    std::string flip_vars = "on";
    std::string emit_cnf;
    bool keep_cnf = false;
    std::string scratch_dir;
    std::string report;
    bool verify_only = false;
    bool certify = false;
    unsigned jobs = 1;
    bool decompose = false;
    bool timing = false;
    bool quiet = false;
};

class UsageError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw EnvironmentError("cannot read '" + path + "'");
    }
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void write_file(const std::string &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out || !(out << text) || !out.flush()) {
        throw EnvironmentError("cannot write '" + path + "'");
    }
}

bool on_off(const std::string &v) {
    return v == "on";
}

std::filesystem::path data_dir() {
    if (const char *env = std::getenv("CLIFFSAT_DATA_DIR")) {
        return env;
    }
#ifdef CLIFFSAT_SOURCE_DATA_DIR
    if (std::filesystem::is_directory(CLIFFSAT_SOURCE_DATA_DIR)) {
        return CLIFFSAT_SOURCE_DATA_DIR;
    }
#endif
#ifdef CLIFFSAT_INSTALL_DATA_DIR
    return CLIFFSAT_INSTALL_DATA_DIR;
#else
    return {};
#endif
}

Json metrics_json(const Metrics &m) {
    return Json{{"cx_count", m.cx_count}, {"cx_depth", m.cx_depth}, {"gate_count", m.gate_count}};
}

Json map_json(const Permutation &p) {
    Json a = Json::array();
    for (uint32_t q = 0; q < p.size(); q++) {
        a.push_back(p(q));
    }
    return a;
}

Json slice_json(const SliceReport &r, bool timing) {
    Json j;
    j["type"] = "slice";
    j["index"] = r.index;
    j["kind"] = r.kind == SliceKind::CLIFFORD ? "clifford" : "opaque";
    j["qubits"] = r.qubits;
    j["before"] = metrics_json(r.before);
    j["after"] = metrics_json(r.after);
    j["status"] = r.status;
    j["replaced"] = r.replaced;
    if (r.coupling_violation) {
        j["coupling_violation"] = true;
    }
    if (r.kind == SliceKind::CLIFFORD) {
        j["achieved"] = r.achieved;
        Json log = Json::array();
        for (const auto &e : r.solve_log) {
            Json k{{"d", e.d}, {"status", status_name(e.status)}, {"vars", e.vars}, {"clauses", e.clauses}};
            if (timing) {
                k["seconds"] = e.seconds;
            }
            log.push_back(std::move(k));
        }
        j["solve_log"] = std::move(log);
    }
    if (timing) {
        j["seconds"] = r.seconds;
    }
    return j;
}

SolverConfig solver_config(const RunConfig &cfg) {
    SolverConfig s;
    s.command = cfg.solver.empty() ? default_solver_command() : SolverConfig::split_command(cfg.solver);
    if (s.command.empty()) {
        throw UsageError("empty solver command");
    }
    s.keep_files = cfg.keep_cnf;
    s.scratch_dir = cfg.scratch_dir;
    return s;
}

int verify_only(const RunConfig &cfg, std::ostream &out, std::ostream &err) {
    if (cfg.candidate.empty()) {
        throw UsageError("--verify-only needs two files: INPUT CANDIDATE");
    }
    Circuit input = parse_qasm(read_file(cfg.input));
    std::string text = read_file(cfg.candidate);
    Circuit cand = parse_qasm(text);
    if (cand.num_qubits != input.num_qubits) {
        err << "verification failed: input has " << input.num_qubits << " qubits, candidate has "
            << cand.num_qubits << "\n";
        return EXIT_VERIFY_FAILED;
    }
    auto map = read_qubit_map(text, cand.num_qubits);
    bool relabel = map.has_value();
    PeepholeCheck check =
        verify_rewrite(input, cand, map.value_or(Permutation::identity(input.num_qubits)), relabel);
    if (!check.ok) {
        err << "verification failed: " << check.message << "\n";
        return EXIT_VERIFY_FAILED;
    }
    out << "verified\n";
    return EXIT_OK;
}

int optimize(const RunConfig &cfg, std::ostream &out, std::ostream &err) {
    if (cfg.metric.empty()) {
        throw UsageError("--metric is required (cx-count or cx-depth)");
    }
    if (!cfg.candidate.empty()) {
        throw UsageError("a second positional file is only accepted with --verify-only");
    }
    auto start = std::chrono::steady_clock::now();
    Circuit input = parse_qasm(read_file(cfg.input));
    uint32_t n = input.num_qubits;

    PeepholeOptions po;
    SynthesisOptions &so = po.synthesis;
    so.metric = parse_metric(cfg.metric);
    so.search = parse_search(cfg.search);
    so.allow_permutation = cfg.permute;
    so.certify = cfg.certify;
    so.time_limit = cfg.slice_time_limit;
    so.encoding.gate_ordering = on_off(cfg.gate_ordering);
    so.encoding.cycle_breaking =
        cfg.cycle_breaking.empty() ? so.metric == Metric::CX_DEPTH : on_off(cfg.cycle_breaking);
    so.encoding.redundant_ctrl_trgt_eo = on_off(cfg.redundant_eo);
    so.encoding.flip_aux_vars = on_off(cfg.flip_vars);
    so.solver = solver_config(cfg);
    if (!cfg.coupling.empty()) {
        CouplingGraph g = resolve_coupling(cfg.coupling, n, data_dir());
        if (g.num_qubits() < n) {
            throw UsageError("coupling graph has " + std::to_string(g.num_qubits()) + " qubits but the circuit uses " +
                             std::to_string(n));
        }
        so.coupling = g.num_qubits() > n ? g.restricted(n) : g;
    }
    po.jobs = std::max(1u, cfg.jobs);
    po.deadline = start + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                              std::chrono::duration<double>(cfg.time_limit));

    if (!cfg.quiet) {
        po.on_solve = [&](size_t slice, const SolveLogEntry &e) {
            err << "slice " << slice << " d=" << e.d << " " << status_name(e.status) << " vars=" << e.vars
                << " clauses=" << e.clauses << " " << std::fixed << std::setprecision(3) << e.seconds << "s\n";
            err.unsetf(std::ios::floatfield);
        };
    }
    if (!cfg.emit_cnf.empty()) {
        size_t clifford_slices = 0;
        for (const auto &s : slice_circuit(input)) {
            clifford_slices += s.kind == SliceKind::CLIFFORD;
        }
        po.on_formula = [&cfg, clifford_slices](size_t slice, uint32_t, const Encoding &enc) {
            std::string path = cfg.emit_cnf;
            if (clifford_slices != 1) {
                path += ".slice" + std::to_string(slice);
            }
            std::ostringstream text;
            enc.ledger.write_comments(text);
            enc.formula.write_dimacs(text);
            write_file(path, text.str());
        };
    }

    PeepholeResult res = optimize_circuit(input, po);
    Circuit result = cfg.decompose ? decompose_circuit(res.circuit) : res.circuit;

    std::vector<std::string> comments;
    if (cfg.permute) {
        comments.push_back(qubit_map_comment(res.final_map));
    }
    std::string text = emit_qasm(result, comments);

    Circuit emitted = parse_qasm(text);
    PeepholeCheck check = verify_rewrite(input, emitted, res.final_map, cfg.permute);
    if (!check.ok) {
        err << "verification failed: " << check.message << "\n";
        return EXIT_VERIFY_FAILED;
    }
    Metrics before = compute_metrics(input);
    Metrics after = compute_metrics(emitted);
    for (const auto &s : res.slices) {
        if (s.coupling_violation) {
            err << "warning: slice " << s.index << " still uses a pair outside the coupling graph\n";
        }
    }

    if (cfg.output.empty()) {
        out << text;
    } else {
        write_file(cfg.output, text);
    }

    if (!cfg.report.empty()) {
        std::ostringstream rep;
        Json summary;
        summary["type"] = "run";
        summary["input"] = cfg.input;
        summary["metric"] = metric_name(so.metric);
        summary["search"] = search_name(so.search);
        summary["permute"] = cfg.permute;
        summary["before"] = metrics_json(before);
        summary["after"] = metrics_json(after);
        summary["qubit_map"] = cfg.permute ? map_json(res.final_map) : Json(nullptr);
        summary["reverted"] = res.reverted;
        summary["verified"] = true;
        if (cfg.timing) {
            summary["seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        }
        rep << summary.dump() << "\n";
        for (const auto &s : res.slices) {
            rep << slice_json(s, cfg.timing).dump() << "\n";
        }
        write_file(cfg.report, rep.str());
    }
    if (!cfg.quiet) {
        err << metric_name(so.metric) << ": cx-count " << before.cx_count << " -> " << after.cx_count
            << ", cx-depth " << before.cx_depth << " -> " << after.cx_depth << "\n";
    }
    return EXIT_OK;
}

}  // namespace

std::string qubit_map_comment(const Permutation &p) {
    std::string s = "qubit-map:";
    for (uint32_t q = 0; q < p.size(); q++) {
        s += " " + std::to_string(q) + "->" + std::to_string(p(q));
    }
    return s;
}

std::optional<Permutation> read_qubit_map(std::string_view qasm_text, uint32_t num_qubits) {
    static const std::regex line_re(R"(^\s*//\s*qubit-map:(.*)$)");
    static const std::regex pair_re(R"(^(\d+)->(\d+)$)");
    std::istringstream in{std::string(qasm_text)};
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        line_no++;
        std::smatch m;
        if (!std::regex_match(line, m, line_re)) {
            continue;
        }
        std::vector<uint32_t> map(num_qubits, num_qubits);
        std::vector<bool> hit(num_qubits, false);
        std::istringstream toks(m[1].str());
        std::string tok;
        while (toks >> tok) {
            std::smatch pm;
            if (!std::regex_match(tok, pm, pair_re)) {
                throw ParseError("bad qubit-map entry '" + tok + "'", line_no);
            }
            unsigned long a = std::stoul(pm[1].str());
            unsigned long b = std::stoul(pm[2].str());
            if (a >= num_qubits || b >= num_qubits || map[a] != num_qubits || hit[b]) {
                throw ParseError("qubit-map entry '" + tok + "' is out of range or repeated", line_no);
            }
            map[a] = static_cast<uint32_t>(b);
            hit[b] = true;
        }
        for (uint32_t q = 0; q < num_qubits; q++) {
            if (map[q] == num_qubits) {
                throw ParseError("qubit-map does not cover qubit " + std::to_string(q), line_no);
            }
        }
        return Permutation(std::move(map));
    }
    return std::nullopt;
}

std::vector<std::string> default_solver_command() {
    if (const char *env = std::getenv("CLIFFSAT_SOLVER"); env && *env) {
        return SolverConfig::split_command(env);
    }
#ifdef CLIFFSAT_BUNDLED_SOLVER
    if (std::filesystem::exists(CLIFFSAT_BUNDLED_SOLVER)) {
        return {CLIFFSAT_BUNDLED_SOLVER, "-q"};
    }
#endif
#ifdef CLIFFSAT_INSTALLED_SOLVER
    if (std::filesystem::exists(CLIFFSAT_INSTALLED_SOLVER)) {
        return {CLIFFSAT_INSTALLED_SOLVER, "-q"};
    }
#endif
    return {"cadical", "-q"};
}

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    RunConfig cfg;
    CLI::App app{"Optimal CNOT-count and CNOT-depth re-synthesis of Clifford slices in OpenQASM 2 circuits.",
                 "cliffsat"};
    app.add_option("input", cfg.input, "Input OpenQASM 2 file")->required();
    app.add_option("candidate", cfg.candidate, "Candidate output to check (with --verify-only)");
    app.add_option("-o,--output", cfg.output, "Write the optimized circuit here instead of stdout");
    app.add_option("--metric", cfg.metric, "Metric to minimize")->check(CLI::IsMember({"cx-count", "cx-depth"}));
    app.add_option("--search", cfg.search, "Makespan search direction")
        ->check(CLI::IsMember({"forward", "backward"}));
    app.add_flag("--permute", cfg.permute, "Allow output qubits to be relabeled");
    app.add_option("--coupling", cfg.coupling, "Coupling graph file, platform name, line[N], ring[N] or grid RxC");
    app.add_option("--solver", cfg.solver, "SAT solver command; the CNF path is appended");
    app.add_option("--time-limit", cfg.time_limit, "Wall-clock budget in seconds for the whole run")
        ->check(CLI::PositiveNumber);
    app.add_option("--slice-time-limit", cfg.slice_time_limit, "Budget in seconds per Clifford slice")
        ->check(CLI::PositiveNumber);
    auto toggle = CLI::IsMember({"on", "off"});
    app.add_option("--gate-ordering", cfg.gate_ordering, "Order commuting entangling layers")->check(toggle);
    app.add_option("--cycle-breaking", cfg.cycle_breaking, "Forbid repeated states (default: on for cx-depth)")
        ->check(toggle);
    app.add_option("--redundant-eo", cfg.redundant_eo, "Redundant control/target cardinality clauses")
        ->check(toggle);
    app.add_option("--flip-vars", cfg.flip_vars, "Auxiliary flip variables")->check(toggle);
    app.add_option("--emit-cnf", cfg.emit_cnf, "Write each formula (with variable map) to PATH");
    app.add_flag("--keep-cnf", cfg.keep_cnf, "Keep solver scratch files");
    app.add_option("--scratch-dir", cfg.scratch_dir, "Directory for solver scratch files");
    app.add_option("--report", cfg.report, "Write a JSON Lines report to PATH");
    app.add_flag("--verify-only", cfg.verify_only, "Check that CANDIDATE is a valid rewrite of INPUT");
    app.add_flag("--certify", cfg.certify, "After backward search, prove optimality with forward checks");
    app.add_option("--jobs", cfg.jobs, "Concurrent slice syntheses (forced to 1 with --permute)")
        ->check(CLI::PositiveNumber);
    app.add_flag("--decompose", cfg.decompose, "Rewrite the output in h, s, x, y, z, cx");
    app.add_flag("--timing", cfg.timing, "Include wall times in the report");
    app.add_flag("-q,--quiet", cfg.quiet, "No progress output on stderr");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e, out, err);
        return code == 0 ? EXIT_OK : EXIT_USAGE;
    }

    try {
        return cfg.verify_only ? verify_only(cfg, out, err) : optimize(cfg, out, err);
    } catch (const EnvironmentError &e) {
        err << "error: " << e.what() << "\n";
        return EXIT_ENVIRONMENT;
    } catch (const ProtocolError &e) {
        err << "solver error: " << e.what() << "\n";
        return EXIT_ENVIRONMENT;
    } catch (const InternalError &e) {
        err << "internal error: " << e.what() << "\n";
        return EXIT_VERIFY_FAILED;
    } catch (const std::invalid_argument &e) {
        err << "error: " << e.what() << "\n";
        return EXIT_USAGE;
    } catch (const std::out_of_range &e) {
        err << "error: " << e.what() << "\n";
        return EXIT_USAGE;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return EXIT_VERIFY_FAILED;
    }
}

}  // namespace cliffsat::cli
