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

#include "cliffsat/peephole.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <mutex>
#include <optional>
#include <set>
#include <stdexcept>
#include <thread>

#include "cliffsat/tableau.h"

namespace cliffsat {

namespace {

std::vector<uint32_t> support_of(const std::vector<Gate> &gates) {
    std::set<uint32_t> s;
    for (const auto &g : gates) {
        s.insert(g.qubits.begin(), g.qubits.end());
    }
    return {s.begin(), s.end()};
}

void flush(std::vector<Slice> &out, SliceKind kind, std::vector<Gate> &gates) {
    if (gates.empty()) {
        return;
    }
    Slice s;
    s.kind = kind;
    s.qubit_support = support_of(gates);
    s.gates = std::move(gates);
    gates.clear();
    out.push_back(std::move(s));
}

uint64_t metric_value(const Metrics &m, Metric metric) {
    return metric == Metric::CX_COUNT ? m.cx_count : m.cx_depth;
}

Metrics metrics_of(uint32_t n, const std::vector<Gate> &gates) {
    return compute_metrics(Circuit(n, gates));
}

bool improves(const Metrics &cand, const Metrics &orig, Metric metric) {
    uint64_t a = metric_value(cand, metric);
    uint64_t b = metric_value(orig, metric);
    return a < b || (a == b && cand.gate_count < orig.gate_count);
}

bool off_coupling(const std::vector<Gate> &gates, const std::optional<CouplingGraph> &g) {
    if (!g) {
        return false;
    }
    for (const auto &x : gates) {
        if (x.is_clifford() && x.qubits.size() == 2 && !g->connected(x.qubits[0], x.qubits[1])) {
            return true;
        }
    }
    return false;
}

struct SliceRun {
    SynthesisOutcome outcome;
    double seconds = 0;
};

class SliceSynthesizer {
   public:
    SliceSynthesizer(uint32_t n, const PeepholeOptions &opts) : n_(n), opts_(opts) {
    }

    SliceRun run(size_t index, const std::vector<Gate> &gates) {
        Circuit circ(n_, gates);
        SynthesisOptions so = opts_.synthesis;
        so.start_bound = static_cast<uint32_t>(metric_value(compute_metrics(decompose_circuit(circ)), so.metric));
        if (opts_.deadline) {
            double left = std::chrono::duration<double>(*opts_.deadline - std::chrono::steady_clock::now()).count();
            so.time_limit = std::min(so.time_limit, left);
        }
        if (opts_.on_solve) {
            so.on_solve = [this, index](const SolveLogEntry &e) {
                std::lock_guard<std::mutex> lock(mutex_);
                opts_.on_solve(index, e);
            };
        }
        if (opts_.on_formula) {
            so.on_formula = [this, index](uint32_t d, const Encoding &enc) {
                std::lock_guard<std::mutex> lock(mutex_);
                opts_.on_formula(index, d, enc);
            };
        }
        auto start = std::chrono::steady_clock::now();
        SliceRun r;
        r.outcome = synthesize(from_circuit(circ), so);
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        return r;
    }

   private:
    uint32_t n_;
    const PeepholeOptions &opts_;
    std::mutex mutex_;
};

/// Runs `work(i)` for every index in `items` on up to `jobs` threads.
template <typename F>
void parallel_for(const std::vector<size_t> &items, unsigned jobs, F &&work) {
    if (jobs <= 1 || items.size() <= 1) {
        for (size_t i : items) {
            work(i);
        }
        return;
    }
    std::atomic<size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> threads;
    unsigned count = std::min<unsigned>(jobs, static_cast<unsigned>(items.size()));
    for (unsigned t = 0; t < count; t++) {
        threads.emplace_back([&]() {
            while (true) {
                size_t k = next++;
                if (k >= items.size()) {
                    return;
                }
                try {
                    work(items[k]);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error) {
                        error = std::current_exception();
                    }
                    next = items.size();
                }
            }
        });
    }
    for (auto &t : threads) {
        t.join();
    }
    if (error) {
        std::rethrow_exception(error);
    }
}

SliceReport base_report(size_t index, const Slice &s, uint32_t n) {
    SliceReport r;
    r.index = index;
    r.kind = s.kind;
    r.qubits = s.qubit_support;
    r.before = metrics_of(n, s.gates);
    r.after = r.before;
    r.status = s.kind == SliceKind::CLIFFORD ? "KEPT" : "OPAQUE";
    return r;
}

void fill_report(SliceReport &r, const SliceRun &run) {
    r.status = synthesis_status_name(run.outcome.status);
    r.achieved = run.outcome.achieved;
    r.seconds = run.seconds;
    r.solve_log = run.outcome.solve_log;
}

PeepholeResult optimize_fixed_wires(const Circuit &c, const std::vector<Slice> &slices, const PeepholeOptions &options) {
    uint32_t n = c.num_qubits;
    Metric metric = options.synthesis.metric;
    PeepholeResult res;
    res.final_map = Permutation::identity(n);

    std::vector<size_t> clifford;
    for (size_t i = 0; i < slices.size(); i++) {
        res.slices.push_back(base_report(i, slices[i], n));
        if (slices[i].kind == SliceKind::CLIFFORD) {
            clifford.push_back(i);
        }
    }

    std::vector<SliceRun> runs(slices.size());
    SliceSynthesizer synth(n, options);
    parallel_for(clifford, options.jobs, [&](size_t i) { runs[i] = synth.run(i, slices[i].gates); });

    std::vector<const std::vector<Gate> *> chosen(slices.size());
    for (size_t i = 0; i < slices.size(); i++) {
        chosen[i] = &slices[i].gates;
    }
    auto assembled_depth = [&]() {
        std::vector<Gate> all;
        for (auto *g : chosen) {
            all.insert(all.end(), g->begin(), g->end());
        }
        return metrics_of(n, all).cx_depth;
    };
    uint64_t depth = metric == Metric::CX_DEPTH ? assembled_depth() : 0;

    for (size_t i : clifford) {
        SliceReport &rep = res.slices[i];
        fill_report(rep, runs[i]);
        if (!runs[i].outcome.circuit) {
            continue;
        }
        const std::vector<Gate> &cand = runs[i].outcome.circuit->gates;
        Metrics m = metrics_of(n, cand);
        bool forced = off_coupling(slices[i].gates, options.synthesis.coupling);
        if (!forced && !improves(m, rep.before, metric)) {
            continue;
        }
        if (metric == Metric::CX_DEPTH && !forced) {
            chosen[i] = &cand;
            uint64_t d = assembled_depth();
            if (d > depth) {
                chosen[i] = &slices[i].gates;
                continue;
            }
            depth = d;
        }
        chosen[i] = &cand;
        rep.after = m;
        rep.replaced = true;
    }

    for (size_t i : clifford) {
        res.slices[i].coupling_violation = off_coupling(*chosen[i], options.synthesis.coupling);
    }
    res.circuit = c.empty_like();
    for (auto *g : chosen) {
        res.circuit.gates.insert(res.circuit.gates.end(), g->begin(), g->end());
    }
    return res;
}

PeepholeResult optimize_with_relabeling(const Circuit &c, const std::vector<Slice> &slices,
                                        const PeepholeOptions &options) {
    uint32_t n = c.num_qubits;
    Metric metric = options.synthesis.metric;
    PeepholeResult res;
    res.circuit = c.empty_like();
    SliceSynthesizer synth(n, options);

    // wire_of[q]: wire currently holding logical qubit q.
    std::vector<uint32_t> wire_of(n);
    for (uint32_t q = 0; q < n; q++) {
        wire_of[q] = q;
    }
    bool any_forced = false;
    for (size_t i = 0; i < slices.size(); i++) {
        const Slice &s = slices[i];
        SliceReport rep = base_report(i, s, n);
        std::vector<Gate> moved;
        for (const auto &g : s.gates) {
            moved.push_back(c.relabel(g, wire_of));
        }
        if (s.kind == SliceKind::CLIFFORD) {
            SliceRun run = synth.run(i, moved);
            fill_report(rep, run);
            bool take = false;
            bool forced = off_coupling(moved, options.synthesis.coupling);
            if (run.outcome.circuit) {
                Metrics m = metrics_of(n, run.outcome.circuit->gates);
                if (forced) {
                    take = true;
                    any_forced = true;
                    rep.after = m;
                } else if (improves(m, rep.before, metric)) {
                    auto trial = res.circuit.gates;
                    trial.insert(trial.end(), run.outcome.circuit->gates.begin(), run.outcome.circuit->gates.end());
                    auto keep = res.circuit.gates;
                    keep.insert(keep.end(), moved.begin(), moved.end());
                    take = metric == Metric::CX_COUNT || metrics_of(n, trial).cx_depth <= metrics_of(n, keep).cx_depth;
                    if (take) {
                        rep.after = m;
                    }
                }
            }
            if (take) {
                rep.replaced = true;
                const Permutation &p = run.outcome.permutation;
                for (uint32_t q = 0; q < n; q++) {
                    wire_of[q] = p(wire_of[q]);
                }
                moved = run.outcome.circuit->gates;
            }
            rep.coupling_violation = off_coupling(moved, options.synthesis.coupling);
        }
        res.circuit.gates.insert(res.circuit.gates.end(), moved.begin(), moved.end());
        res.slices.push_back(std::move(rep));
    }
    res.final_map = Permutation(wire_of);

    if (metric == Metric::CX_DEPTH && !any_forced &&
        compute_metrics(res.circuit).cx_depth > compute_metrics(c).cx_depth) {
        res.circuit = c;
        res.final_map = Permutation::identity(n);
        res.reverted = true;
        for (auto &rep : res.slices) {
            rep.after = rep.before;
            rep.replaced = false;
        }
    }
    return res;
}

bool same_opaque(const Gate &a, const Gate &b) {
    return a.kind == b.kind && a.qubits == b.qubits && a.head == b.head && a.tail == b.tail;
}

/// The column relabeling p with permute_columns(from, p) == to on x and z.
std::optional<Permutation> match_columns(const Tableau &from, const Tableau &to) {
    size_t n = from.num_qubits();
    std::vector<uint32_t> p(n);
    std::vector<bool> used(n, false);
    for (size_t a = 0; a < n; a++) {
        bool found = false;
        for (size_t b = 0; b < n && !found; b++) {
            if (used[b]) {
                continue;
            }
            bool same = true;
            for (size_t i = 0; i < 2 * n && same; i++) {
                same = from.x(i, a) == to.x(i, b) && from.z(i, a) == to.z(i, b);
            }
            if (same) {
                p[a] = static_cast<uint32_t>(b);
                used[b] = true;
                found = true;
            }
        }
        if (!found) {
            return std::nullopt;
        }
    }
    return Permutation(std::move(p));
}

}  // namespace

PeepholeCheck verify_rewrite(const Circuit &input, const Circuit &output, const Permutation &final_map,
                             bool allow_relabeling) {
    PeepholeCheck res;
    uint32_t n = input.num_qubits;
    if (output.num_qubits != n || final_map.size() != n) {
        res.message = "qubit counts differ: input " + std::to_string(n) + ", output " +
                      std::to_string(output.num_qubits) + ", map " + std::to_string(final_map.size());
        return res;
    }
    std::vector<uint32_t> wire_of(n);
    for (uint32_t q = 0; q < n; q++) {
        wire_of[q] = q;
    }
    size_t pos = 0;
    const auto &out = output.gates;
    auto slices = slice_circuit(input);
    for (size_t k = 0; k < slices.size(); k++) {
        const Slice &s = slices[k];
        if (s.kind == SliceKind::OPAQUE_RUN) {
            for (const auto &g : s.gates) {
                Gate want = input.relabel(g, wire_of);
                if (pos >= out.size() || !same_opaque(out[pos], want)) {
                    res.message = "slice " + std::to_string(k) + ": expected '" + want.label + "' at output gate " +
                                  std::to_string(pos);
                    return res;
                }
                pos++;
            }
            continue;
        }
        Circuit before(n);
        for (const auto &g : s.gates) {
            before.gates.push_back(input.relabel(g, wire_of));
        }
        Circuit after(n);
        while (pos < out.size() && out[pos].is_clifford()) {
            after.gates.push_back(out[pos++]);
        }
        Tableau tb = from_circuit(before);
        Tableau ta = from_circuit(after);
        auto p = match_columns(tb, ta);
        if (!p || !equivalent(permute_columns(tb, *p), ta)) {
            res.message = "slice " + std::to_string(k) + ": Clifford segment does not match the input slice";
            return res;
        }
        if (!allow_relabeling && !p->is_identity()) {
            res.message = "slice " + std::to_string(k) + ": segment relabels qubits but relabeling is not allowed";
            return res;
        }
        for (uint32_t q = 0; q < n; q++) {
            wire_of[q] = (*p)(wire_of[q]);
        }
    }
    if (pos != out.size()) {
        res.message = "output has " + std::to_string(out.size() - pos) + " unmatched trailing gate(s)";
        return res;
    }
    res.final_map = Permutation(wire_of);
    if (res.final_map != final_map) {
        res.message = "accumulated qubit map differs from the declared one";
        return res;
    }
    res.ok = true;
    return res;
}

std::vector<Slice> slice_circuit(const Circuit &c) {
    std::vector<Slice> out;
    std::vector<Gate> cur;
    std::vector<Gate> pending;
    std::vector<bool> blocked(c.num_qubits, false);
    for (const auto &g : c.gates) {
        if (!g.is_clifford()) {
            if (g.qubits.empty()) {
                blocked.assign(c.num_qubits, true);
            }
            for (uint32_t q : g.qubits) {
                blocked[q] = true;
            }
            pending.push_back(g);
            continue;
        }
        bool hit = std::any_of(g.qubits.begin(), g.qubits.end(), [&](uint32_t q) { return blocked[q]; });
        if (hit) {
            flush(out, SliceKind::CLIFFORD, cur);
            flush(out, SliceKind::OPAQUE_RUN, pending);
            blocked.assign(c.num_qubits, false);
        }
        cur.push_back(g);
    }
    flush(out, SliceKind::CLIFFORD, cur);
    flush(out, SliceKind::OPAQUE_RUN, pending);
    return out;
}

Circuit join_slices(const Circuit &like, const std::vector<Slice> &slices) {
    Circuit out = like.empty_like();
    for (const auto &s : slices) {
        out.gates.insert(out.gates.end(), s.gates.begin(), s.gates.end());
    }
    return out;
}

PeepholeResult optimize_circuit(const Circuit &c, const PeepholeOptions &options) {
    if (c.num_qubits == 0) {
        throw std::invalid_argument("circuit has no qubits");
    }
    const SynthesisOptions &so = options.synthesis;
    if (so.allow_permutation && so.coupling) {
        for (const auto &g : c.gates) {
            if (!g.is_clifford() && g.qubits.size() >= 2) {
                throw std::invalid_argument(
                    "qubit relabeling with a coupling graph would move the multi-qubit gate '" + g.label +
                    "' off its coupling edge; drop --permute or --coupling");
            }
        }
    }
    std::vector<Slice> slices = slice_circuit(c);
    if (so.allow_permutation) {
        return optimize_with_relabeling(c, slices, options);
    }
    return optimize_fixed_wires(c, slices, options);
}

}  // namespace cliffsat
