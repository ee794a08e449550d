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

#ifndef CLIFFSAT_TABLEAU_H
#define CLIFFSAT_TABLEAU_H

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "cliffsat/circuit.h"

namespace cliffsat {

/// Dense GF(2) matrix, row-major, 64 columns per word.
class BitMatrix {
   public:
    BitMatrix() = default;
    BitMatrix(size_t rows, size_t cols);

    size_t rows() const {
        return rows_;
    }
    size_t cols() const {
        return cols_;
    }

    bool get(size_t r, size_t c) const {
        return (data_[r * stride_ + (c >> 6)] >> (c & 63)) & 1;
    }
    void set(size_t r, size_t c, bool v) {
        uint64_t &w = data_[r * stride_ + (c >> 6)];
        uint64_t m = uint64_t{1} << (c & 63);
        w = v ? (w | m) : (w & ~m);
    }
    void flip(size_t r, size_t c) {
        data_[r * stride_ + (c >> 6)] ^= uint64_t{1} << (c & 63);
    }

    std::span<uint64_t> row(size_t r) {
        return {data_.data() + r * stride_, stride_};
    }
    std::span<const uint64_t> row(size_t r) const {
        return {data_.data() + r * stride_, stride_};
    }

    /// Row r ^= row s.
    void xor_row_into(size_t r, size_t s);
    void swap_rows(size_t r, size_t s);

    BitMatrix transposed() const;
    BitMatrix operator*(const BitMatrix &rhs) const;
    static BitMatrix identity(size_t n);

    /// Rank via Gaussian elimination on a copy.
    size_t rank() const;

    bool operator==(const BitMatrix &other) const = default;

   private:
    size_t rows_ = 0;
    size_t cols_ = 0;
    size_t stride_ = 0;
    std::vector<uint64_t> data_;
};

/// Column relabeling. `map[a]` is where column a goes.
struct Permutation {
    std::vector<uint32_t> map;

    Permutation() = default;
    explicit Permutation(std::vector<uint32_t> map);
    static Permutation identity(size_t n);

    size_t size() const {
        return map.size();
    }
    uint32_t operator()(uint32_t a) const {
        return map[a];
    }
    bool is_identity() const;
    Permutation inverse() const;
    /// (this ∘ first)(a) = this(first(a)).
    Permutation after(const Permutation &first) const;

    bool operator==(const Permutation &other) const = default;
};

/// Stabilizer tableau in the (x | z | r) layout: rows 0..n-1 are
/// destabilizers, rows n..2n-1 stabilizers, column a belongs to qubit a.
class Tableau {
   public:
    Tableau() = default;
    /// The tableau of the empty circuit. Throws std::invalid_argument for n = 0.
    explicit Tableau(size_t n);

    size_t num_qubits() const {
        return n_;
    }
    size_t num_rows() const {
        return 2 * n_;
    }

    bool x(size_t row, size_t col) const {
        return xs_.get(row, col);
    }
    bool z(size_t row, size_t col) const {
        return zs_.get(row, col);
    }
    bool r(size_t row) const {
        return rs_[row] != 0;
    }
    void set_x(size_t row, size_t col, bool v) {
        xs_.set(row, col, v);
    }
    void set_z(size_t row, size_t col, bool v) {
        zs_.set(row, col, v);
    }
    void set_r(size_t row, bool v) {
        rs_[row] = v;
    }
    const BitMatrix &xs() const {
        return xs_;
    }
    const BitMatrix &zs() const {
        return zs_;
    }

    // Elementary updates, applied to every row.
    void cx(size_t control, size_t target);
    void h(size_t a);
    void s(size_t a);
    void pauli_x(size_t a);
    void pauli_y(size_t a);
    void pauli_z(size_t a);

    /// Throws UnsupportedGateError for OPAQUE and RangeError for bad qubits.
    void apply(const Gate &g);

    /// The 2n×2n matrix [x | z].
    BitMatrix symplectic_matrix() const;
    /// True iff rows are valid destabilizer/stabilizer generators.
    bool is_symplectic() const;

    /// Block rendering "x | z | r", one row per line.
    std::string str() const;

    bool operator==(const Tableau &other) const = default;

   private:
    size_t n_ = 0;
    BitMatrix xs_;
    BitMatrix zs_;
    std::vector<uint8_t> rs_;
};

Tableau initial_tableau(size_t n);
Tableau apply_gate(Tableau t, const Gate &g);
/// Left fold of apply_gate; throws UnsupportedGateError on OPAQUE gates.
Tableau from_circuit(const Circuit &c);
/// Runs the gates of `c` starting from `start` instead of the identity.
Tableau run_circuit(const Circuit &c, Tableau start);

/// Full equality of x, z and r. Throws std::invalid_argument on size mismatch.
bool equivalent(const Tableau &a, const Tableau &b);
/// Equality of x and z only.
bool equivalent_xz(const Tableau &a, const Tableau &b);

/// Pauli prefix that turns synth's r-column into target's:
/// Z_i where r_i differs, X_i where r_{n+i} differs.
std::vector<Gate> recover_phase(const Tableau &synth, const Tableau &target);

/// recover_phase plus a simulation check: returns prefix+body and throws
/// InternalError if the result does not reproduce target exactly.
Circuit prepend_phase_fix(const Circuit &body, const Tableau &target);

/// Moves column a of x and z to column p(a); r is untouched.
Tableau permute_columns(const Tableau &t, const Permutation &p);

/// Returns x,z of the inverse Clifford (r zeroed).
Tableau inverse_xz(const Tableau &t);

/// Reverses a Clifford circuit gate by gate. CX and H are self-inverse and
/// S stands in for its inverse, so the result is exact on x,z only.
Circuit reverse_xz(const Circuit &c);

}  // namespace cliffsat

#endif
