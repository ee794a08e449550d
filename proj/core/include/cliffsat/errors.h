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

#ifndef CLIFFSAT_ERRORS_H
#define CLIFFSAT_ERRORS_H

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cliffsat {

/// Malformed textual input (QASM, coupling files, solver output).
struct ParseError : std::invalid_argument {
    ParseError(const std::string &msg, size_t line)
        : std::invalid_argument("line " + std::to_string(line) + ": " + msg), line(line) {
    }
    explicit ParseError(const std::string &msg) : std::invalid_argument(msg), line(0) {
    }
    size_t line;
};

/// A qubit or variable index outside its declared range.
struct RangeError : std::out_of_range {
    using std::out_of_range::out_of_range;
};

/// A gate that the requested operation cannot interpret (OPAQUE in a tableau context).
struct UnsupportedGateError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// External process trouble: solver missing, crashed, or I/O failure around it.
struct EnvironmentError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The solver ran but its output does not follow the SAT-competition protocol.
struct ProtocolError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The request exceeds what an exhaustive component can handle.
struct CapabilityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A cross-check between two independent code paths disagreed. Always a bug.
struct InternalError : std::logic_error {
    using std::logic_error::logic_error;
};

}  // namespace cliffsat

#endif
