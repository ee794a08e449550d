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

#include "cliffsat/tableau.h"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "cliffsat/errors.h"

namespace cliffsat {

BitMatrix::BitMatrix(size_t rows, size_t cols)
    : rows_(rows), cols_(cols), stride_((cols + 63) / 64), data_(rows * ((cols + 63) / 64), 0) {
}

void BitMatrix::xor_row_into(size_t r, size_t s) {
    auto dst = row(r);
    auto src = row(s);
    for (size_t k = 0; k < stride_; k++) {
        dst[k] ^= src[k];
    }
}

void BitMatrix::swap_rows(size_t r, size_t s) {
    auto a = row(r);
    auto b = row(s);
    std::swap_ranges(a.begin(), a.end(), b.begin());
}

BitMatrix BitMatrix::transposed() const {
    BitMatrix out(cols_, rows_);
    for (size_t r = 0; r < rows_; r++) {
        for (size_t c = 0; c < cols_; c++) {
            if (get(r, c)) {
                out.set(c, r, true);
            }
        }
    }
    return out;
}

BitMatrix BitMatrix::operator*(const BitMatrix &rhs) const {
    if (cols_ != rhs.rows_) {
        throw std::invalid_argument("BitMatrix product dimension mismatch");
    }
    BitMatrix out(rows_, rhs.cols_);
    for (size_t r = 0; r < rows_; r++) {
        auto dst = out.row(r);
        for (size_t k = 0; k < cols_; k++) {
            if (get(r, k)) {
                auto src = rhs.row(k);
                for (size_t w = 0; w < dst.size(); w++) {
                    dst[w] ^= src[w];
                }
            }
        }
    }
    return out;
}

BitMatrix BitMatrix::identity(size_t n) {
    BitMatrix out(n, n);
    for (size_t k = 0; k < n; k++) {
        out.set(k, k, true);
    }
    return out;
}

size_t BitMatrix::rank() const {
    BitMatrix m = *this;
    size_t rank = 0;
    for (size_t c = 0; c < cols_ && rank < rows_; c++) {
        size_t pivot = rank;
        while (pivot < rows_ && !m.get(pivot, c)) {
            pivot++;
        }
        if (pivot == rows_) {
            continue;
        }
        m.swap_rows(rank, pivot);
        for (size_t r = 0; r < rows_; r++) {
            if (r != rank && m.get(r, c)) {
                m.xor_row_into(r, rank);
            }
        }
        rank++;
    }
    return rank;
}

Permutation::Permutation(std::vector<uint32_t> m) : map(std::move(m)) {
    std::vector<bool> seen(map.size(), false);
    for (uint32_t v : map) {
        if (v >= map.size() || seen[v]) {
            throw std::invalid_argument("permutation map is not a bijection");
        }
        seen[v] = true;
    }
}

Permutation Permutation::identity(size_t n) {
    std::vector<uint32_t> m(n);
    for (size_t k = 0; k < n; k++) {
        m[k] = static_cast<uint32_t>(k);
    }
    return Permutation(std::move(m));
}

bool Permutation::is_identity() const {
    for (size_t k = 0; k < map.size(); k++) {
        if (map[k] != k) {
            return false;
        }
    }
    return true;
}

Permutation Permutation::inverse() const {
    std::vector<uint32_t> inv(map.size());
    for (size_t k = 0; k < map.size(); k++) {
        inv[map[k]] = static_cast<uint32_t>(k);
    }
    return Permutation(std::move(inv));
}

Permutation Permutation::after(const Permutation &first) const {
    if (first.size() != size()) {
        throw std::invalid_argument("permutation size mismatch");
    }
    std::vector<uint32_t> out(map.size());
    for (size_t k = 0; k < map.size(); k++) {
        out[k] = map[first.map[k]];
    }
    return Permutation(std::move(out));
}

Tableau::Tableau(size_t n) : n_(n), xs_(2 * n, n), zs_(2 * n, n), rs_(2 * n, 0) {
    if (n == 0) {
        throw std::invalid_argument("a tableau needs at least one qubit");
    }
    for (size_t k = 0; k < n; k++) {
        xs_.set(k, k, true);
        zs_.set(n + k, k, true);
    }
}

void Tableau::cx(size_t a, size_t b) {
    for (size_t i = 0; i < 2 * n_; i++) {
        bool xa = xs_.get(i, a), xb = xs_.get(i, b);
        bool za = zs_.get(i, a), zb = zs_.get(i, b);
        rs_[i] ^= xa & zb & (xb ^ za ^ 1);
        xs_.set(i, b, xa ^ xb);
        zs_.set(i, a, za ^ zb);
    }
}

void Tableau::h(size_t a) {
    for (size_t i = 0; i < 2 * n_; i++) {
        bool xa = xs_.get(i, a), za = zs_.get(i, a);
        rs_[i] ^= xa & za;
        xs_.set(i, a, za);
        zs_.set(i, a, xa);
    }
}

void Tableau::s(size_t a) {
    for (size_t i = 0; i < 2 * n_; i++) {
        bool xa = xs_.get(i, a), za = zs_.get(i, a);
        rs_[i] ^= xa & za;
        zs_.set(i, a, xa ^ za);
    }
}

void Tableau::pauli_x(size_t a) {
    for (size_t i = 0; i < 2 * n_; i++) {
        rs_[i] ^= zs_.get(i, a);
    }
}

// Y = XZ; the r update is x_{ia} ^ z_{ia}.
void Tableau::pauli_y(size_t a) {
    for (size_t i = 0; i < 2 * n_; i++) {
        rs_[i] ^= xs_.get(i, a) ^ zs_.get(i, a);
    }
}

void Tableau::pauli_z(size_t a) {
    for (size_t i = 0; i < 2 * n_; i++) {
        rs_[i] ^= xs_.get(i, a);
    }
}

void Tableau::apply(const Gate &g) {
    if (g.kind == GateKind::OPAQUE) {
        throw UnsupportedGateError("tableau cannot simulate opaque gate '" + g.label + "'");
    }
    for (uint32_t q : g.qubits) {
        if (q >= n_) {
            throw RangeError("gate " + g.str() + " out of range for a " + std::to_string(n_) + "-qubit tableau");
        }
    }
    switch (g.kind) {
        case GateKind::H:
            h(g.qubits[0]);
            break;
        case GateKind::S:
            s(g.qubits[0]);
            break;
        case GateKind::X:
            pauli_x(g.qubits[0]);
            break;
        case GateKind::Y:
            pauli_y(g.qubits[0]);
            break;
        case GateKind::Z:
            pauli_z(g.qubits[0]);
            break;
        case GateKind::CX:
            cx(g.qubits[0], g.qubits[1]);
            break;
        case GateKind::ID:
            break;
        default:
            for (const auto &b : decompose_to_base(g)) {
                apply(b);
            }
            break;
    }
}

BitMatrix Tableau::symplectic_matrix() const {
    BitMatrix m(2 * n_, 2 * n_);
    for (size_t i = 0; i < 2 * n_; i++) {
        for (size_t a = 0; a < n_; a++) {
            m.set(i, a, xs_.get(i, a));
            m.set(i, n_ + a, zs_.get(i, a));
        }
    }
    return m;
}

namespace {

BitMatrix omega(size_t n) {
    BitMatrix w(2 * n, 2 * n);
    for (size_t k = 0; k < n; k++) {
        w.set(k, n + k, true);
        w.set(n + k, k, true);
    }
    return w;
}

}  // namespace

bool Tableau::is_symplectic() const {
    BitMatrix m = symplectic_matrix();
    return m * omega(n_) * m.transposed() == omega(n_);
}

std::string Tableau::str() const {
    std::ostringstream out;
    for (size_t i = 0; i < 2 * n_; i++) {
        for (size_t a = 0; a < n_; a++) {
            out << (a ? " " : "") << xs_.get(i, a);
        }
        out << " |";
        for (size_t a = 0; a < n_; a++) {
            out << " " << zs_.get(i, a);
        }
        out << " | " << int(rs_[i]) << "\n";
    }
    return out.str();
}

Tableau initial_tableau(size_t n) {
    return Tableau(n);
}

Tableau apply_gate(Tableau t, const Gate &g) {
    t.apply(g);
    return t;
}

Tableau run_circuit(const Circuit &c, Tableau start) {
    for (const auto &g : c.gates) {
        start.apply(g);
    }
    return start;
}

Tableau from_circuit(const Circuit &c) {
    return run_circuit(c, Tableau(c.num_qubits));
}

namespace {

void require_same_size(const Tableau &a, const Tableau &b) {
    if (a.num_qubits() != b.num_qubits()) {
        throw std::invalid_argument(
            "tableau size mismatch: " + std::to_string(a.num_qubits()) + " vs " + std::to_string(b.num_qubits()));
    }
}

}  // namespace

bool equivalent(const Tableau &a, const Tableau &b) {
    require_same_size(a, b);
    return a == b;
}

bool equivalent_xz(const Tableau &a, const Tableau &b) {
    require_same_size(a, b);
    return a.xs() == b.xs() && a.zs() == b.zs();
}

std::vector<Gate> recover_phase(const Tableau &synth, const Tableau &target) {
    if (!equivalent_xz(synth, target)) {
        throw std::invalid_argument("phase recovery needs tableaux with identical x and z");
    }
    size_t n = synth.num_qubits();
    std::vector<Gate> seq;
    for (uint32_t i = 0; i < n; i++) {
        if (synth.r(i) != target.r(i)) {
            seq.push_back(Gate::z(i));
        }
        if (synth.r(n + i) != target.r(n + i)) {
            seq.push_back(Gate::x(i));
        }
    }
    return seq;
}

Circuit prepend_phase_fix(const Circuit &body, const Tableau &target) {
    Circuit out = body.empty_like();
    for (auto &g : recover_phase(from_circuit(body), target)) {
        out.gates.push_back(std::move(g));
    }
    out.gates.insert(out.gates.end(), body.gates.begin(), body.gates.end());
    if (!equivalent(from_circuit(out), target)) {
        throw InternalError("Pauli prefix failed to reproduce the target r-column");
    }
    return out;
}

Tableau permute_columns(const Tableau &t, const Permutation &p) {
    size_t n = t.num_qubits();
    if (p.size() != n) {
        throw std::invalid_argument("permutation size does not match tableau");
    }
    Tableau out = t;
    for (size_t i = 0; i < 2 * n; i++) {
        for (size_t a = 0; a < n; a++) {
            out.set_x(i, p(a), t.x(i, a));
            out.set_z(i, p(a), t.z(i, a));
        }
    }
    return out;
}

Tableau inverse_xz(const Tableau &t) {
    size_t n = t.num_qubits();
    BitMatrix w = omega(n);
    BitMatrix inv = w * t.symplectic_matrix().transposed() * w;
    Tableau out(n);
    for (size_t i = 0; i < 2 * n; i++) {
        out.set_r(i, false);
        for (size_t a = 0; a < n; a++) {
            out.set_x(i, a, inv.get(i, a));
            out.set_z(i, a, inv.get(i, n + a));
        }
    }
    return out;
}

Circuit reverse_xz(const Circuit &c) {
    Circuit out = c.empty_like();
    for (auto it = c.gates.rbegin(); it != c.gates.rend(); ++it) {
        switch (it->kind) {
            case GateKind::OPAQUE:
                throw UnsupportedGateError("cannot reverse opaque gate '" + it->label + "'");
            case GateKind::SDG:
                out.gates.push_back(Gate::s(it->qubits[0]));
                break;
            case GateKind::X:
            case GateKind::Y:
            case GateKind::Z:
            case GateKind::ID:
                break;
            default:
                out.gates.push_back(*it);
                break;
        }
    }
    return out;
}

}  // namespace cliffsat
