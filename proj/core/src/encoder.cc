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

#include "cliffsat/encoder.h"

#include <ostream>
#include <stdexcept>

#include "cliffsat/errors.h"

namespace cliffsat {

const char *metric_name(Metric m) {
    return m == Metric::CX_COUNT ? "cx-count" : "cx-depth";
}

Metric parse_metric(std::string_view name) {
    if (name == "cx-count") {
        return Metric::CX_COUNT;
    }
    if (name == "cx-depth") {
        return Metric::CX_DEPTH;
    }
    throw std::invalid_argument("unknown metric '" + std::string(name) + "' (expected cx-count or cx-depth)");
}

std::vector<Gate> layer_gate_circuit(LayerGate g, uint32_t q) {
    switch (g) {
        case LayerGate::I:
            return {};
        case LayerGate::HS:
            return {Gate::h(q), Gate::s(q)};
        case LayerGate::SH:
            return {Gate::s(q), Gate::h(q)};
    }
    return {};
}

std::vector<Gate> final_gate_circuit(FinalGate g, uint32_t q) {
    switch (g) {
        case FinalGate::I:
            return {};
        case FinalGate::H:
            return {Gate::h(q)};
        case FinalGate::S:
            return {Gate::s(q)};
        case FinalGate::HS:
            return {Gate::h(q), Gate::s(q)};
        case FinalGate::SH:
            return {Gate::s(q), Gate::h(q)};
        case FinalGate::HSH:
            return {Gate::h(q), Gate::s(q), Gate::h(q)};
    }
    return {};
}

namespace {

constexpr uint32_t kLayerGates = 3;
constexpr uint32_t kFinalGates = 6;
constexpr const char *kLayerNames[kLayerGates] = {"i", "hs", "sh"};
constexpr const char *kFinalNames[kFinalGates] = {"final_i", "final_h", "final_s", "final_hs", "final_sh", "final_hsh"};

Lit alloc(CnfFormula &f, int64_t count) {
    if (count <= 0) {
        return 0;
    }
    return f.new_vars(static_cast<int32_t>(count));
}

std::vector<std::pair<uint32_t, uint32_t>> cycle_layer_pairs(uint32_t d) {
    std::vector<std::pair<uint32_t, uint32_t>> out;
    for (uint32_t k = 0; k < d; k++) {
        for (uint32_t k2 = k + 1; k2 < d && k2 - k <= 3; k2++) {
            out.push_back({k, k2});
        }
    }
    return out;
}

void check_spec(const SynthesisSpec &spec) {
    size_t n = spec.target.num_qubits();
    if (n == 0) {
        throw std::invalid_argument("synthesis target has no qubits");
    }
    if (spec.coupling && spec.coupling->num_qubits() != n) {
        throw std::invalid_argument(
            "coupling graph has " + std::to_string(spec.coupling->num_qubits()) + " qubits but the target has " +
            std::to_string(n));
    }
}

// g -> (a <-> b)
void implies_equiv(CnfFormula &f, Lit g, Lit a, Lit b) {
    f.add_clause({-g, -a, b});
    f.add_clause({-g, a, -b});
}

// Exactly-one that tolerates an empty list (which becomes the empty clause).
void exactly_one_or_empty(CnfFormula &f, std::span<const Lit> lits) {
    at_least_one(f, lits);
    at_most_one(f, lits);
}

}  // namespace

VariableLedger::VariableLedger(CnfFormula &f, const SynthesisSpec &spec) {
    check_spec(spec);
    n_ = static_cast<uint32_t>(spec.target.num_qubits());
    d_ = spec.makespan_d;
    for (uint32_t a = 0; a < n_; a++) {
        for (uint32_t b = a + 1; b < n_; b++) {
            pairs_.push_back({a, b});
        }
    }
    int64_t cells = int64_t{2} * n_ * n_;
    int64_t states = 2 * int64_t{d_} + 2;
    int64_t transitions = 2 * int64_t{d_} + 1;
    x_ = alloc(f, states * cells);
    z_ = alloc(f, states * cells);
    px_ = alloc(f, transitions * cells);
    pz_ = alloc(f, transitions * cells);
    if (spec.opts.flip_aux_vars) {
        fx_ = alloc(f, transitions * cells);
        fz_ = alloc(f, transitions * cells);
        flip_ = fx_;
    }
    layer_ = alloc(f, int64_t{d_} * n_ * kLayerGates);
    cnot_ = alloc(f, int64_t{d_} * num_pairs());
    ctrl_ = alloc(f, int64_t{d_} * n_);
    trgt_ = alloc(f, int64_t{d_} * n_);
    final_ = alloc(f, int64_t{n_} * kFinalGates);
    if (spec.opts.cycle_breaking) {
        cycle_pairs_ = cycle_layer_pairs(d_);
        cycle_ = alloc(f, static_cast<int64_t>(cycle_pairs_.size()) * 4 * n_);
    }
}

uint32_t VariableLedger::pair_index(uint32_t a, uint32_t b) const {
    if (a >= b || b >= n_) {
        throw RangeError("no cnot pair (" + std::to_string(a) + "," + std::to_string(b) + ")");
    }
    // Pairs (0,1..n-1), (1,2..n-1), ...: row a starts after a*(2n-a-1)/2 entries.
    return a * (2 * n_ - a - 1) / 2 + (b - a - 1);
}

Lit VariableLedger::cell(Lit base, uint32_t t, uint32_t i, uint32_t a) const {
    return base + static_cast<Lit>((int64_t{t} * 2 * n_ + i) * n_ + a);
}

Lit VariableLedger::x(uint32_t t, uint32_t i, uint32_t a) const {
    return cell(x_, t, i, a);
}
Lit VariableLedger::z(uint32_t t, uint32_t i, uint32_t a) const {
    return cell(z_, t, i, a);
}
Lit VariableLedger::px(uint32_t t, uint32_t i, uint32_t a) const {
    return cell(px_, t, i, a);
}
Lit VariableLedger::pz(uint32_t t, uint32_t i, uint32_t a) const {
    return cell(pz_, t, i, a);
}
Lit VariableLedger::fx(uint32_t t, uint32_t i, uint32_t a) const {
    return fx_ ? cell(fx_, t, i, a) : 0;
}
Lit VariableLedger::fz(uint32_t t, uint32_t i, uint32_t a) const {
    return fz_ ? cell(fz_, t, i, a) : 0;
}
Lit VariableLedger::flips_x(uint32_t t, uint32_t i, uint32_t a) const {
    return fx_ ? cell(fx_, t, i, a) : -px(t, i, a);
}
Lit VariableLedger::flips_z(uint32_t t, uint32_t i, uint32_t a) const {
    return fz_ ? cell(fz_, t, i, a) : -pz(t, i, a);
}

Lit VariableLedger::layer_gate(uint32_t k, uint32_t a, LayerGate g) const {
    return layer_ + static_cast<Lit>((k * n_ + a) * kLayerGates + static_cast<uint32_t>(g));
}
Lit VariableLedger::cnot(uint32_t k, uint32_t a, uint32_t b) const {
    return cnot_ + static_cast<Lit>(k * num_pairs() + pair_index(a, b));
}
Lit VariableLedger::ctrl(uint32_t k, uint32_t a) const {
    return ctrl_ + static_cast<Lit>(k * n_ + a);
}
Lit VariableLedger::trgt(uint32_t k, uint32_t a) const {
    return trgt_ + static_cast<Lit>(k * n_ + a);
}
Lit VariableLedger::final_gate(uint32_t a, FinalGate g) const {
    return final_ + static_cast<Lit>(a * kFinalGates + static_cast<uint32_t>(g));
}
Lit VariableLedger::dr(uint32_t pair, uint32_t i) const {
    return cycle_ + static_cast<Lit>(pair * 4 * n_ + i);
}
Lit VariableLedger::dxc(uint32_t pair, uint32_t a) const {
    return cycle_ + static_cast<Lit>(pair * 4 * n_ + 2 * n_ + a);
}
Lit VariableLedger::dzc(uint32_t pair, uint32_t a) const {
    return cycle_ + static_cast<Lit>(pair * 4 * n_ + 3 * n_ + a);
}

void VariableLedger::write_comments(std::ostream &out) const {
    auto cells = [&](const char *name, uint32_t steps, Lit (VariableLedger::*get)(uint32_t, uint32_t, uint32_t) const) {
        for (uint32_t t = 0; t < steps; t++) {
            for (uint32_t i = 0; i < 2 * n_; i++) {
                for (uint32_t a = 0; a < n_; a++) {
                    out << "c " << name << " " << t << " " << i << " " << a << " " << (this->*get)(t, i, a) << "\n";
                }
            }
        }
    };
    cells("x", last_step() + 1, &VariableLedger::x);
    cells("z", last_step() + 1, &VariableLedger::z);
    cells("px", last_step(), &VariableLedger::px);
    cells("pz", last_step(), &VariableLedger::pz);
    if (fx_) {
        cells("fx", last_step(), &VariableLedger::fx);
        cells("fz", last_step(), &VariableLedger::fz);
    }
    for (uint32_t k = 0; k < d_; k++) {
        for (uint32_t a = 0; a < n_; a++) {
            for (uint32_t g = 0; g < kLayerGates; g++) {
                out << "c " << kLayerNames[g] << " " << k << " " << a << " "
                    << layer_gate(k, a, static_cast<LayerGate>(g)) << "\n";
            }
        }
    }
    for (uint32_t k = 0; k < d_; k++) {
        for (auto [a, b] : pairs_) {
            out << "c cnot " << k << " " << a << " " << b << " " << cnot(k, a, b) << "\n";
        }
    }
    for (uint32_t k = 0; k < d_; k++) {
        for (uint32_t a = 0; a < n_; a++) {
            out << "c ctrl " << k << " " << a << " " << ctrl(k, a) << "\n";
        }
    }
    for (uint32_t k = 0; k < d_; k++) {
        for (uint32_t a = 0; a < n_; a++) {
            out << "c trgt " << k << " " << a << " " << trgt(k, a) << "\n";
        }
    }
    for (uint32_t a = 0; a < n_; a++) {
        for (uint32_t g = 0; g < kFinalGates; g++) {
            out << "c " << kFinalNames[g] << " " << a << " " << final_gate(a, static_cast<FinalGate>(g)) << "\n";
        }
    }
    for (uint32_t p = 0; p < cycle_pairs_.size(); p++) {
        auto [k, k2] = cycle_pairs_[p];
        for (uint32_t i = 0; i < 2 * n_; i++) {
            out << "c dr " << k << " " << k2 << " " << i << " " << dr(p, i) << "\n";
        }
        for (uint32_t a = 0; a < n_; a++) {
            out << "c dxc " << k << " " << k2 << " " << a << " " << dxc(p, a) << "\n";
        }
        for (uint32_t a = 0; a < n_; a++) {
            out << "c dzc " << k << " " << k2 << " " << a << " " << dzc(p, a) << "\n";
        }
    }
}

namespace constraints {

void propagation(CnfFormula &f, const VariableLedger &v, const SynthesisSpec &) {
    uint32_t n = v.num_qubits();
    for (uint32_t t = 0; t < v.last_step(); t++) {
        for (uint32_t i = 0; i < 2 * n; i++) {
            for (uint32_t a = 0; a < n; a++) {
                link_xor3(f, v.px(t, i, a), v.x(t, i, a), v.x(t + 1, i, a));
                link_xor3(f, v.pz(t, i, a), v.z(t, i, a), v.z(t + 1, i, a));
                if (v.has_flip_vars()) {
                    link_equiv(f, v.fx(t, i, a), -v.px(t, i, a));
                    link_equiv(f, v.fz(t, i, a), -v.pz(t, i, a));
                }
            }
        }
    }
}

void one_qubit_layer(CnfFormula &f, const VariableLedger &v, const SynthesisSpec &, uint32_t k) {
    uint32_t n = v.num_qubits();
    uint32_t t = 2 * k;
    for (uint32_t a = 0; a < n; a++) {
        Lit gi = v.layer_gate(k, a, LayerGate::I);
        Lit hs = v.layer_gate(k, a, LayerGate::HS);
        Lit sh = v.layer_gate(k, a, LayerGate::SH);
        Lit c = v.ctrl(k, a);
        Lit g = v.trgt(k, a);
        Lit eo[] = {gi, hs, sh};
        exactly_one(f, eo);
        f.add_clause({c, g, gi});
        f.add_clause({-hs, c, g});
        f.add_clause({-sh, c, g});
        for (uint32_t i = 0; i < 2 * n; i++) {
            f.add_clause({-gi, v.px(t, i, a)});
            f.add_clause({-gi, v.pz(t, i, a)});
            // HS: x := z, z := x ^ z.
            implies_equiv(f, hs, v.z(t, i, a), v.x(t + 1, i, a));
            implies_equiv(f, hs, v.x(t, i, a), v.flips_z(t, i, a));
            // SH: z := x, x := x ^ z.
            implies_equiv(f, sh, v.x(t, i, a), v.z(t + 1, i, a));
            implies_equiv(f, sh, v.z(t, i, a), v.flips_x(t, i, a));
        }
    }
}

namespace {

// Row updates of a CX layer shared by both metrics.
void cnot_effects(CnfFormula &f, const VariableLedger &v, uint32_t k) {
    uint32_t n = v.num_qubits();
    uint32_t t = 2 * k + 1;
    for (uint32_t p = 0; p < v.num_pairs(); p++) {
        auto [a, b] = v.pair_at(p);
        Lit c = v.cnot(k, a, b);
        for (uint32_t i = 0; i < 2 * n; i++) {
            implies_equiv(f, c, v.x(t, i, a), v.flips_x(t, i, b));
            implies_equiv(f, c, v.z(t, i, b), v.flips_z(t, i, a));
        }
    }
    for (uint32_t a = 0; a < n; a++) {
        for (uint32_t i = 0; i < 2 * n; i++) {
            f.add_clause({v.trgt(k, a), v.px(t, i, a)});
            f.add_clause({v.ctrl(k, a), v.pz(t, i, a)});
        }
    }
}

// ctrl_a -> some cnot(a, .) and trgt_b -> some cnot(., b).
void flags_need_cnot(CnfFormula &f, const VariableLedger &v, uint32_t k) {
    uint32_t n = v.num_qubits();
    std::vector<Lit> clause;
    for (uint32_t q = 0; q < n; q++) {
        clause.assign({-v.ctrl(k, q)});
        for (uint32_t b = q + 1; b < n; b++) {
            clause.push_back(v.cnot(k, q, b));
        }
        f.add_clause(clause);
        clause.assign({-v.trgt(k, q)});
        for (uint32_t a = 0; a < q; a++) {
            clause.push_back(v.cnot(k, a, q));
        }
        f.add_clause(clause);
    }
}

std::vector<Lit> layer_cnots(const VariableLedger &v, uint32_t k) {
    std::vector<Lit> out;
    for (uint32_t p = 0; p < v.num_pairs(); p++) {
        auto [a, b] = v.pair_at(p);
        out.push_back(v.cnot(k, a, b));
    }
    return out;
}

}  // namespace

void cnot_layer_count(CnfFormula &f, const VariableLedger &v, const SynthesisSpec &, uint32_t k) {
    exactly_one_or_empty(f, layer_cnots(v, k));
    for (uint32_t p = 0; p < v.num_pairs(); p++) {
        auto [a, b] = v.pair_at(p);
        Lit c = v.cnot(k, a, b);
        f.add_clause({-c, v.ctrl(k, a)});
        f.add_clause({-c, v.trgt(k, b)});
        f.add_clause({c, -v.ctrl(k, a), -v.trgt(k, b)});
    }
    flags_need_cnot(f, v, k);
    cnot_effects(f, v, k);
}

void cnot_layer_depth(CnfFormula &f, const VariableLedger &v, const SynthesisSpec &, uint32_t k) {
    uint32_t n = v.num_qubits();
    std::vector<Lit> touching;
    for (uint32_t q = 0; q < n; q++) {
        touching.clear();
        for (uint32_t o = 0; o < n; o++) {
            if (o != q) {
                touching.push_back(v.cnot(k, std::min(q, o), std::max(q, o)));
            }
        }
        at_most_one(f, touching);
    }
    at_least_one(f, layer_cnots(v, k));
    flags_need_cnot(f, v, k);
    for (uint32_t p = 0; p < v.num_pairs(); p++) {
        auto [a, b] = v.pair_at(p);
        Lit c = v.cnot(k, a, b);
        f.add_clause({-c, v.ctrl(k, a)});
        f.add_clause({-c, v.trgt(k, b)});
    }
    cnot_effects(f, v, k);
}

void coupling(CnfFormula &f, const VariableLedger &v, const SynthesisSpec &spec, uint32_t k) {
    if (!spec.coupling) {
        return;
    }
    for (uint32_t p = 0; p < v.num_pairs(); p++) {
        auto [a, b] = v.pair_at(p);
        if (!spec.coupling->connected(a, b)) {
            f.add_clause({-v.cnot(k, a, b)});
        }
    }
}

void redundant_eo(CnfFormula &f, const VariableLedger &v, const SynthesisSpec &spec, uint32_t k) {
    uint32_t n = v.num_qubits();
    std::vector<Lit> ctrls, trgts;
    for (uint32_t a = 0; a < n; a++) {
        ctrls.push_back(v.ctrl(k, a));
        trgts.push_back(v.trgt(k, a));
    }
    if (spec.metric == Metric::CX_COUNT) {
        exactly_one(f, ctrls);
        exactly_one(f, trgts);
    } else {
        at_least_one(f, ctrls);
        at_least_one(f, trgts);
    }
}

void final_layer(CnfFormula &f, const VariableLedger &v, const SynthesisSpec &) {
    uint32_t n = v.num_qubits();
    uint32_t t = 2 * v.makespan();
    for (uint32_t a = 0; a < n; a++) {
        Lit g[kFinalGates];
        for (uint32_t k = 0; k < kFinalGates; k++) {
            g[k] = v.final_gate(a, static_cast<FinalGate>(k));
        }
        exactly_one(f, g);
        Lit gi = g[0], h = g[1], s = g[2], hs = g[3], sh = g[4], hsh = g[5];
        for (uint32_t i = 0; i < 2 * n; i++) {
            Lit x0 = v.x(t, i, a), z0 = v.z(t, i, a);
            Lit x1 = v.x(t + 1, i, a), z1 = v.z(t + 1, i, a);
            f.add_clause({-gi, v.px(t, i, a)});
            f.add_clause({-gi, v.pz(t, i, a)});
            implies_equiv(f, h, z0, x1);
            implies_equiv(f, h, x0, z1);
            f.add_clause({-s, v.px(t, i, a)});
            implies_equiv(f, s, x0, v.flips_z(t, i, a));
            implies_equiv(f, hs, z0, x1);
            implies_equiv(f, hs, x0, v.flips_z(t, i, a));
            implies_equiv(f, sh, x0, z1);
            implies_equiv(f, sh, z0, v.flips_x(t, i, a));
            f.add_clause({-hsh, v.pz(t, i, a)});
            implies_equiv(f, hsh, z0, v.flips_x(t, i, a));
        }
    }
}

void initial(CnfFormula &f, const VariableLedger &v, const SynthesisSpec &spec) {
    uint32_t n = v.num_qubits();
    if (!spec.allow_permutation) {
        for (uint32_t i = 0; i < 2 * n; i++) {
            for (uint32_t a = 0; a < n; a++) {
                f.add_clause({i == a ? v.x(0, i, a) : -v.x(0, i, a)});
                f.add_clause({i == n + a ? v.z(0, i, a) : -v.z(0, i, a)});
            }
        }
        return;
    }
    for (uint32_t i = 0; i < n; i++) {
        for (uint32_t a = 0; a < n; a++) {
            link_equiv(f, v.x(0, i, a), v.z(0, n + i, a));
            f.add_clause({-v.x(0, n + i, a)});
            f.add_clause({-v.z(0, i, a)});
        }
    }
    std::vector<Lit> line;
    for (uint32_t i = 0; i < n; i++) {
        line.clear();
        for (uint32_t a = 0; a < n; a++) {
            line.push_back(v.x(0, i, a));
        }
        exactly_one(f, line);
    }
    for (uint32_t a = 0; a < n; a++) {
        line.clear();
        for (uint32_t i = 0; i < n; i++) {
            line.push_back(v.x(0, i, a));
        }
        exactly_one(f, line);
    }
}

void goal(CnfFormula &f, const VariableLedger &v, const SynthesisSpec &spec) {
    uint32_t n = v.num_qubits();
    uint32_t t = v.last_step();
    for (uint32_t i = 0; i < 2 * n; i++) {
        for (uint32_t a = 0; a < n; a++) {
            f.add_clause({spec.target.x(i, a) ? v.x(t, i, a) : -v.x(t, i, a)});
            f.add_clause({spec.target.z(i, a) ? v.z(t, i, a) : -v.z(t, i, a)});
        }
    }
}

void gate_ordering(CnfFormula &f, const VariableLedger &v, const SynthesisSpec &spec) {
    for (uint32_t k = 1; k < v.makespan(); k++) {
        if (spec.metric == Metric::CX_DEPTH) {
            for (uint32_t p = 0; p < v.num_pairs(); p++) {
                auto [a, b] = v.pair_at(p);
                f.add_clause({-v.cnot(k, a, b), v.ctrl(k - 1, a), v.ctrl(k - 1, b), v.trgt(k - 1, a),
                              v.trgt(k - 1, b)});
            }
            continue;
        }
        for (uint32_t p = 0; p < v.num_pairs(); p++) {
            auto [a, b] = v.pair_at(p);
            for (uint32_t q = 0; q < v.num_pairs(); q++) {
                auto [a2, b2] = v.pair_at(q);
                if (a > a2 && a != b2 && b != a2 && b != b2) {
                    f.add_clause({-v.cnot(k - 1, a, b), -v.cnot(k, a2, b2)});
                }
            }
        }
    }
}

void cycle_breaking(CnfFormula &f, const VariableLedger &v, const SynthesisSpec &) {
    uint32_t n = v.num_qubits();
    std::vector<Lit> rows, cols;
    for (uint32_t p = 0; p < v.cycle_pairs().size(); p++) {
        auto [k, k2] = v.cycle_pairs()[p];
        uint32_t t = 2 * k + 2;
        uint32_t t2 = 2 * k2 + 2;
        rows.clear();
        cols.clear();
        for (uint32_t i = 0; i < 2 * n; i++) {
            rows.push_back(v.dr(p, i));
        }
        for (uint32_t a = 0; a < n; a++) {
            cols.push_back(v.dxc(p, a));
        }
        for (uint32_t a = 0; a < n; a++) {
            cols.push_back(v.dzc(p, a));
        }
        exactly_one(f, rows);
        exactly_one(f, cols);
        for (uint32_t i = 0; i < 2 * n; i++) {
            for (uint32_t a = 0; a < n; a++) {
                Lit r = v.dr(p, i);
                Lit cx = v.dxc(p, a);
                Lit cz = v.dzc(p, a);
                f.add_clause({-r, -cx, v.x(t, i, a), v.x(t2, i, a)});
                f.add_clause({-r, -cx, -v.x(t, i, a), -v.x(t2, i, a)});
                f.add_clause({-r, -cz, v.z(t, i, a), v.z(t2, i, a)});
                f.add_clause({-r, -cz, -v.z(t, i, a), -v.z(t2, i, a)});
            }
        }
    }
}

}  // namespace constraints

Encoding encode(const SynthesisSpec &spec) {
    Encoding e;
    e.ledger = VariableLedger(e.formula, spec);
    CnfFormula &f = e.formula;
    const VariableLedger &v = e.ledger;
    constraints::initial(f, v, spec);
    constraints::propagation(f, v, spec);
    for (uint32_t k = 0; k < spec.makespan_d; k++) {
        constraints::one_qubit_layer(f, v, spec, k);
        if (spec.metric == Metric::CX_COUNT) {
            constraints::cnot_layer_count(f, v, spec, k);
        } else {
            constraints::cnot_layer_depth(f, v, spec, k);
        }
        constraints::coupling(f, v, spec, k);
        if (spec.opts.redundant_ctrl_trgt_eo) {
            constraints::redundant_eo(f, v, spec, k);
        }
    }
    constraints::final_layer(f, v, spec);
    constraints::goal(f, v, spec);
    if (spec.opts.gate_ordering) {
        constraints::gate_ordering(f, v, spec);
    }
    if (spec.opts.cycle_breaking) {
        constraints::cycle_breaking(f, v, spec);
    }
    return e;
}

namespace {

struct Tally {
    int64_t vars = 0;
    int64_t clauses = 0;

    void amo(int64_t m) {
        if (m >= 2) {
            vars += m - 1;
            clauses += 3 * m - 4;
        }
    }
    void eo(int64_t m) {
        clauses += 1;
        amo(m);
    }
};

}  // namespace

FormulaSize formula_size(const SynthesisSpec &spec) {
    check_spec(spec);
    int64_t n = static_cast<int64_t>(spec.target.num_qubits());
    int64_t d = spec.makespan_d;
    int64_t pairs = n * (n - 1) / 2;
    int64_t cells = 2 * n * n;
    int64_t transitions = 2 * d + 1;
    bool flip = spec.opts.flip_aux_vars;
    Tally t;

    t.vars += 2 * (2 * d + 2) * cells;
    t.vars += 2 * transitions * cells;
    if (flip) {
        t.vars += 2 * transitions * cells;
    }
    t.vars += d * n * 3 + d * pairs + 2 * d * n + 6 * n;

    if (spec.allow_permutation) {
        t.clauses += 4 * n * n;
        for (int64_t k = 0; k < 2 * n; k++) {
            t.eo(n);
        }
    } else {
        t.clauses += 2 * cells;
    }

    t.clauses += transitions * cells * (8 + (flip ? 4 : 0));

    int64_t non_edges = 0;
    if (spec.coupling) {
        non_edges = pairs - static_cast<int64_t>(spec.coupling->edges().size());
    }
    for (int64_t k = 0; k < d; k++) {
        for (int64_t a = 0; a < n; a++) {
            t.eo(3);
            t.clauses += 3 + 2 * n * 10;
        }
        if (spec.metric == Metric::CX_COUNT) {
            t.eo(pairs);
            t.clauses += 3 * pairs;
        } else {
            for (int64_t q = 0; q < n; q++) {
                t.amo(n - 1);
            }
            t.clauses += 1 + 2 * pairs;
        }
        t.clauses += 2 * n;
        t.clauses += pairs * 2 * n * 4 + n * 2 * n * 2;
        t.clauses += non_edges;
        if (spec.opts.redundant_ctrl_trgt_eo) {
            if (spec.metric == Metric::CX_COUNT) {
                t.eo(n);
                t.eo(n);
            } else {
                t.clauses += 2;
            }
        }
    }

    for (int64_t a = 0; a < n; a++) {
        t.eo(6);
        t.clauses += 2 * n * 20;
    }
    t.clauses += 2 * cells;

    if (spec.opts.gate_ordering && d >= 2) {
        if (spec.metric == Metric::CX_DEPTH) {
            t.clauses += (d - 1) * pairs;
        } else {
            // Ordered pairs of disjoint CNOT slots (a,b), (a',b') with a > a'.
            int64_t disjoint = 0;
            for (int64_t a = 0; a < n; a++) {
                for (int64_t b = a + 1; b < n; b++) {
                    for (int64_t a2 = 0; a2 < a; a2++) {
                        for (int64_t b2 = a2 + 1; b2 < n; b2++) {
                            if (b2 != a && b2 != b) {
                                disjoint++;
                            }
                        }
                    }
                }
            }
            t.clauses += (d - 1) * disjoint;
        }
    }

    if (spec.opts.cycle_breaking) {
        int64_t cycle_pairs = static_cast<int64_t>(cycle_layer_pairs(spec.makespan_d).size());
        t.vars += cycle_pairs * 4 * n;
        for (int64_t p = 0; p < cycle_pairs; p++) {
            t.eo(2 * n);
            t.eo(2 * n);
            t.clauses += 4 * cells;
        }
    }
    return {t.vars, t.clauses};
}

DecodedCircuit decode_model(const VariableLedger &v, const std::vector<bool> &model, const SynthesisSpec &spec) {
    uint32_t n = v.num_qubits();
    auto val = [&](Lit l) {
        if (l <= 0 || static_cast<size_t>(l) >= model.size()) {
            throw InternalError("model does not cover variable " + std::to_string(l));
        }
        return static_cast<bool>(model[l]);
    };
    DecodedCircuit out;
    out.circuit = Circuit(n);
    for (uint32_t k = 0; k < v.makespan(); k++) {
        for (uint32_t a = 0; a < n; a++) {
            int chosen = -1;
            for (uint32_t g = 0; g < kLayerGates; g++) {
                if (val(v.layer_gate(k, a, static_cast<LayerGate>(g)))) {
                    if (chosen >= 0) {
                        throw InternalError("two pre-rotations chosen for one qubit");
                    }
                    chosen = static_cast<int>(g);
                }
            }
            if (chosen < 0) {
                throw InternalError("no pre-rotation chosen for a qubit");
            }
            for (auto &g : layer_gate_circuit(static_cast<LayerGate>(chosen), a)) {
                out.circuit.gates.push_back(std::move(g));
            }
        }
        size_t placed = 0;
        for (uint32_t p = 0; p < v.num_pairs(); p++) {
            auto [a, b] = v.pair_at(p);
            if (val(v.cnot(k, a, b))) {
                out.circuit.gates.push_back(Gate::cx(a, b));
                placed++;
            }
        }
        if (placed == 0 || (spec.metric == Metric::CX_COUNT && placed != 1)) {
            throw InternalError("layer " + std::to_string(k) + " has " + std::to_string(placed) + " CNOTs");
        }
    }
    for (uint32_t a = 0; a < n; a++) {
        int chosen = -1;
        for (uint32_t g = 0; g < kFinalGates; g++) {
            if (val(v.final_gate(a, static_cast<FinalGate>(g)))) {
                if (chosen >= 0) {
                    throw InternalError("two final gates chosen for one qubit");
                }
                chosen = static_cast<int>(g);
            }
        }
        if (chosen < 0) {
            throw InternalError("no final gate chosen for a qubit");
        }
        for (auto &g : final_gate_circuit(static_cast<FinalGate>(chosen), a)) {
            out.circuit.gates.push_back(std::move(g));
        }
    }
    if (!spec.allow_permutation) {
        out.permutation = Permutation::identity(n);
        return out;
    }
    std::vector<uint32_t> sigma(n, n);
    for (uint32_t i = 0; i < n; i++) {
        for (uint32_t a = 0; a < n; a++) {
            if (val(v.x(0, i, a))) {
                if (sigma[i] != n) {
                    throw InternalError("initial permutation row has two ones");
                }
                sigma[i] = a;
            }
        }
        if (sigma[i] == n) {
            throw InternalError("initial permutation row is empty");
        }
    }
    try {
        out.permutation = Permutation(std::move(sigma));
    } catch (const std::invalid_argument &) {
        throw InternalError("initial permutation matrix is not a bijection");
    }
    return out;
}

}  // namespace cliffsat
