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

#ifndef CLIFFSAT_CNF_H
#define CLIFFSAT_CNF_H

#include <cstdint>
#include <filesystem>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace cliffsat {

/// DIMACS literal: +v or -v for variable v >= 1.
using Lit = int32_t;

/// Append-only clause database. Clauses are stored flat and never deduplicated.
class CnfFormula {
   public:
    /// Allocates `count` fresh variables and returns the first id.
    /// Throws std::invalid_argument for count <= 0.
    Lit new_vars(int32_t count);
    Lit new_var() {
        return new_vars(1);
    }

    void add_clause(std::span<const Lit> lits);
    void add_clause(std::initializer_list<Lit> lits) {
        add_clause(std::span<const Lit>(lits.begin(), lits.size()));
    }

    int32_t num_vars() const {
        return num_vars_;
    }
    size_t num_clauses() const {
        return starts_.size();
    }
    std::span<const Lit> clause(size_t k) const;

    void write_dimacs(std::ostream &out) const;
    std::string to_dimacs() const;

   private:
    int32_t num_vars_ = 0;
    std::vector<Lit> lits_;
    std::vector<size_t> starts_;
};

/// At-least-one clause plus a sequential-counter at-most-one.
/// Throws std::invalid_argument on an empty list.
void exactly_one(CnfFormula &f, std::span<const Lit> lits);
/// Sequential counter (m-1 register variables for m literals). Vacuous when empty.
void at_most_one(CnfFormula &f, std::span<const Lit> lits);
/// Single disjunction. An empty list adds the empty clause.
void at_least_one(CnfFormula &f, std::span<const Lit> lits);

/// p <-> q (2 clauses).
void link_equiv(CnfFormula &f, Lit p, Lit q);
/// p <-> (q <-> r) (4 clauses).
void link_xor3(CnfFormula &f, Lit p, Lit q, Lit r);

enum class SolveStatus { SAT, UNSAT, TIMEOUT };
const char *status_name(SolveStatus s);

struct SolverResult {
    SolveStatus status = SolveStatus::TIMEOUT;
    /// model[v] for v in 1..num_vars; index 0 unused. Empty unless SAT.
    std::vector<bool> model;
    double wall_time = 0;

    bool value(Lit v) const {
        return v > 0 ? model[v] : !model[-v];
    }
};

struct SolverConfig {
    /// Executable followed by its arguments; the CNF path is appended.
    std::vector<std::string> command;
    std::filesystem::path scratch_dir;
    bool keep_files = false;

    /// Splits on whitespace.
    static std::vector<std::string> split_command(const std::string &cmd);
};

/// Runs an external SAT-competition style solver on `f`.
///
/// Exit codes 10/20 and "s SATISFIABLE"/"s UNSATISFIABLE" lines are both
/// understood. Wall time over `time_limit` seconds kills the solver's
/// process group and reports TIMEOUT. A missing binary or an unexpected exit
/// throws EnvironmentError; unreadable output throws ProtocolError.
SolverResult solve(const CnfFormula &f, const SolverConfig &config, double time_limit);

}  // namespace cliffsat

#endif
