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

#include "cliffsat/synthesizer.h"

#include <chrono>
#include <stdexcept>

#include "cliffsat/errors.h"

namespace cliffsat {

const char *search_name(SearchStrategy s) {
    return s == SearchStrategy::FORWARD ? "forward" : "backward";
}

SearchStrategy parse_search(std::string_view name) {
    if (name == "forward") {
        return SearchStrategy::FORWARD;
    }
    if (name == "backward") {
        return SearchStrategy::BACKWARD;
    }
    throw std::invalid_argument("unknown search strategy '" + std::string(name) + "' (expected forward or backward)");
}

const char *synthesis_status_name(SynthesisStatus s) {
    switch (s) {
        case SynthesisStatus::OPTIMAL:
            return "OPTIMAL";
        case SynthesisStatus::BEST_FOUND:
            return "BEST_FOUND";
        case SynthesisStatus::TIMEOUT_NO_RESULT:
            return "TIMEOUT_NO_RESULT";
    }
    return "?";
}

namespace {

struct Found {
    Circuit circuit;
    Permutation permutation;
};

class Search {
   public:
    Search(const Tableau &target, const SynthesisOptions &opts)
        : target_(target), opts_(opts), start_(std::chrono::steady_clock::now()) {
        query_ = opts.allow_permutation ? inverse_xz(target) : target;
    }

    double remaining() const {
        double used = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
        return opts_.time_limit - used;
    }

    /// One exact-d query. Returns the verified circuit on SAT.
    std::optional<Found> attempt(uint32_t d, SolveStatus &status, SynthesisOutcome &out) {
        SynthesisSpec spec{query_, opts_.metric, d, opts_.allow_permutation, opts_.coupling, opts_.encoding};
        Encoding enc = encode(spec);
        if (opts_.on_formula) {
            opts_.on_formula(d, enc);
        }
        SolverResult r = solve(enc.formula, opts_.solver, remaining());
        status = r.status;
        SolveLogEntry entry{d, r.status, r.wall_time, enc.formula.num_vars(),
                            static_cast<int64_t>(enc.formula.num_clauses())};
        out.solve_log.push_back(entry);
        if (opts_.on_solve) {
            opts_.on_solve(entry);
        }
        if (r.status != SolveStatus::SAT) {
            return std::nullopt;
        }
        return finish(decode_model(enc.ledger, r.model, spec));
    }

   private:
    const Tableau &target_;
    const SynthesisOptions &opts_;
    std::chrono::steady_clock::time_point start_;
    Tableau query_;

    Found finish(DecodedCircuit dec) {
        Circuit body = opts_.allow_permutation ? reverse_xz(dec.circuit) : dec.circuit;
        Tableau full = opts_.allow_permutation ? permute_columns(target_, dec.permutation) : target_;
        if (!equivalent_xz(from_circuit(body), full)) {
            throw InternalError("decoded circuit does not reproduce the target's x and z");
        }
        if (opts_.coupling) {
            for (const auto &g : body.gates) {
                if (g.kind == GateKind::CX && !opts_.coupling->connected(g.qubits[0], g.qubits[1])) {
                    throw InternalError("decoded circuit places " + g.str() + " off the coupling graph");
                }
            }
        }
        Circuit fixed = prepend_phase_fix(body, full);
        return {std::move(fixed), std::move(dec.permutation)};
    }
};

void accept(SynthesisOutcome &out, Found f, uint32_t d, SynthesisStatus status) {
    out.circuit = std::move(f.circuit);
    out.permutation = std::move(f.permutation);
    out.achieved = d;
    out.status = status;
}

/// Forward scan over [from, to). Returns true if it found (and accepted) a result.
bool forward(Search &s, SynthesisOutcome &out, uint32_t from, std::optional<uint32_t> to, bool &timed_out) {
    timed_out = false;
    for (uint32_t d = from; !to || d < *to; d++) {
        if (s.remaining() <= 0) {
            timed_out = true;
            return false;
        }
        SolveStatus st;
        auto found = s.attempt(d, st, out);
        if (found) {
            accept(out, std::move(*found), d, SynthesisStatus::OPTIMAL);
            return true;
        }
        if (st == SolveStatus::TIMEOUT) {
            timed_out = true;
            return false;
        }
    }
    return false;
}

}  // namespace

SynthesisOutcome synthesize(const Tableau &target, const SynthesisOptions &options) {
    size_t n = target.num_qubits();
    if (n == 0) {
        throw std::invalid_argument("synthesis target has no qubits");
    }
    SynthesisOutcome out;
    out.permutation = Permutation::identity(n);
    Search s(target, options);

    if (options.search == SearchStrategy::FORWARD) {
        std::optional<uint32_t> to;
        if (options.max_makespan) {
            to = *options.max_makespan + 1;
        }
        bool timed_out;
        forward(s, out, 0, to, timed_out);
        return out;
    }

    if (!options.start_bound) {
        throw std::invalid_argument("backward search needs a start bound");
    }
    for (int64_t d = *options.start_bound; d >= 0; d--) {
        if (s.remaining() <= 0) {
            break;
        }
        SolveStatus st;
        auto found = s.attempt(static_cast<uint32_t>(d), st, out);
        if (!found) {
            break;
        }
        accept(out, std::move(*found), static_cast<uint32_t>(d), d == 0 ? SynthesisStatus::OPTIMAL
                                                                           : SynthesisStatus::BEST_FOUND);
    }
    if (options.certify && out.circuit && out.status == SynthesisStatus::BEST_FOUND) {
        SynthesisOutcome probe;
        probe.permutation = out.permutation;
        bool timed_out;
        bool smaller = forward(s, probe, 0, out.achieved, timed_out);
        out.solve_log.insert(out.solve_log.end(), probe.solve_log.begin(), probe.solve_log.end());
        if (smaller) {
            accept(out, {std::move(*probe.circuit), std::move(probe.permutation)}, probe.achieved,
                   SynthesisStatus::OPTIMAL);
        } else if (!timed_out) {
            out.status = SynthesisStatus::OPTIMAL;
        }
    }
    return out;
}

bool verify(const Circuit &input, const Circuit &output, const Permutation &permutation) {
    if (input.num_qubits != output.num_qubits || permutation.size() != input.num_qubits) {
        throw std::invalid_argument("verify needs circuits and a permutation of the same size");
    }
    Tableau want = permute_columns(from_circuit(input), permutation);
    return equivalent(from_circuit(output), want);
}

}  // namespace cliffsat
