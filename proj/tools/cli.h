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

#ifndef CLIFFSAT_TOOLS_CLI_H
#define CLIFFSAT_TOOLS_CLI_H

#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "cliffsat/tableau.h"

namespace cliffsat::cli {

enum ExitCode : int {
    EXIT_OK = 0,
    EXIT_VERIFY_FAILED = 1,
    EXIT_USAGE = 2,
    EXIT_ENVIRONMENT = 3,
};

/// Entry point of the cliffsat command. Everything the user should see goes
/// to `out` (results) and `err` (diagnostics, solver log).
int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

/// "qubit-map: 0->1 1->0 ..." as written into output headers.
std::string qubit_map_comment(const Permutation &p);

/// Reads the qubit-map comment from QASM text; nullopt if there is none.
/// Throws ParseError for a malformed map.
std::optional<Permutation> read_qubit_map(std::string_view qasm_text, uint32_t num_qubits);

/// Solver command used when --solver is not given: $CLIFFSAT_SOLVER, then
/// the bundled CaDiCaL (build tree, then install prefix), then cadical from
/// PATH.
std::vector<std::string> default_solver_command();

}  // namespace cliffsat::cli

#endif
