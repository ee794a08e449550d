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

#include "test_support.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <unordered_map>

namespace cliffsat::testing {

SolverConfig test_solver() {
    SolverConfig c;
    if (const char *env = std::getenv("CLIFFSAT_TEST_SOLVER"); env && *env) {
        c.command = SolverConfig::split_command(env);
        return c;
    }
#ifdef CLIFFSAT_TEST_SOLVER
    c.command = {CLIFFSAT_TEST_SOLVER, "-q"};
#else
    c.command = {"cadical", "-q"};
#endif
    return c;
}

namespace {

Gate random_one_qubit(uint32_t q, std::mt19937_64 &rng) {
    switch (rng() % 5) {
        case 0:
            return Gate::h(q);
        case 1:
            return Gate::s(q);
        case 2:
            return Gate::x(q);
        case 3:
            return Gate::y(q);
        default:
            return Gate::z(q);
    }
}

}  // namespace

Circuit random_clifford_circuit(uint32_t n, size_t len, std::mt19937_64 &rng) {
    Circuit c(n);
    for (size_t k = 0; k < len; k++) {
        if (n >= 2 && rng() % 3 == 0) {
            uint32_t a = rng() % n;
            uint32_t b = rng() % (n - 1);
            b += b >= a;
            c.append(Gate::cx(a, b));
        } else {
            c.append(random_one_qubit(rng() % n, rng));
        }
    }
    return c;
}

Circuit random_coupled_circuit(uint32_t n, const std::vector<std::pair<uint32_t, uint32_t>> &edges, size_t len,
                               std::mt19937_64 &rng) {
    Circuit c(n);
    for (size_t k = 0; k < len; k++) {
        if (!edges.empty() && rng() % 3 == 0) {
            auto [a, b] = edges[rng() % edges.size()];
            if (rng() % 2) {
                std::swap(a, b);
            }
            c.append(Gate::cx(a, b));
        } else {
            c.append(random_one_qubit(rng() % n, rng));
        }
    }
    return c;
}

Circuit two_cnot_example() {
    return Circuit(2, {Gate::cx(0, 1), Gate::s(1), Gate::cx(0, 1), Gate::x(1)});
}

RefSymplectic RefSymplectic::identity(uint32_t n) {
    RefSymplectic m;
    m.n = n;
    m.rows.assign(2 * n, std::vector<uint8_t>(2 * n, 0));
    for (uint32_t i = 0; i < 2 * n; i++) {
        m.rows[i][i] = 1;
    }
    return m;
}

void RefSymplectic::apply(const Gate &g) {
    auto col_x = [](uint32_t a) { return a; };
    uint32_t nn = n;
    auto col_z = [nn](uint32_t a) { return nn + a; };
    for (auto &row : rows) {
        switch (g.kind) {
            case GateKind::H:
                std::swap(row[col_x(g.qubits[0])], row[col_z(g.qubits[0])]);
                break;
            case GateKind::S:
            case GateKind::SDG:
                row[col_z(g.qubits[0])] ^= row[col_x(g.qubits[0])];
                break;
            case GateKind::CX:
                row[col_x(g.qubits[1])] ^= row[col_x(g.qubits[0])];
                row[col_z(g.qubits[0])] ^= row[col_z(g.qubits[1])];
                break;
            case GateKind::CZ:
                row[col_z(g.qubits[0])] ^= row[col_x(g.qubits[1])];
                row[col_z(g.qubits[1])] ^= row[col_x(g.qubits[0])];
                break;
            case GateKind::SWAP:
                std::swap(row[col_x(g.qubits[0])], row[col_x(g.qubits[1])]);
                std::swap(row[col_z(g.qubits[0])], row[col_z(g.qubits[1])]);
                break;
            case GateKind::X:
            case GateKind::Y:
            case GateKind::Z:
            case GateKind::ID:
                break;
            case GateKind::OPAQUE:
                ADD_FAILURE() << "opaque gate in reference simulation";
                return;
        }
    }
}

RefSymplectic RefSymplectic::of(const Circuit &c) {
    RefSymplectic m = identity(c.num_qubits);
    for (const auto &g : c.gates) {
        m.apply(g);
    }
    return m;
}

RefSymplectic RefSymplectic::relabeled(const std::vector<uint32_t> &p) const {
    RefSymplectic m = *this;
    for (uint32_t i = 0; i < 2 * n; i++) {
        for (uint32_t a = 0; a < n; a++) {
            m.rows[i][p[a]] = rows[i][a];
            m.rows[i][n + p[a]] = rows[i][n + a];
        }
    }
    return m;
}

uint64_t RefSymplectic::key() const {
    uint64_t k = 0;
    int bit = 0;
    for (const auto &row : rows) {
        for (uint8_t v : row) {
            k |= uint64_t{v} << bit++;
        }
    }
    return k;
}

namespace {

using Edges = std::vector<std::pair<uint32_t, uint32_t>>;
using DistMap = std::unordered_map<uint64_t, int>;

const DistMap &distances(uint32_t n, const std::optional<Edges> &edges) {
    static std::mutex mutex;
    static std::map<std::pair<uint32_t, std::optional<Edges>>, DistMap> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto key = std::make_pair(n, edges);
    auto it = cache.find(key);
    if (it != cache.end()) {
        return it->second;
    }
    std::vector<Gate> free_moves;
    std::vector<Gate> cx_moves;
    for (uint32_t a = 0; a < n; a++) {
        free_moves.push_back(Gate::h(a));
        free_moves.push_back(Gate::s(a));
        for (uint32_t b = 0; b < n; b++) {
            if (a == b) {
                continue;
            }
            bool ok = !edges.has_value();
            if (edges) {
                for (auto [u, v] : *edges) {
                    ok = ok || (u == a && v == b) || (u == b && v == a);
                }
            }
            if (ok) {
                cx_moves.push_back(Gate::cx(a, b));
            }
        }
    }
    DistMap dist;
    dist.reserve(n == 3 ? 1500000 : 1024);
    std::deque<std::pair<RefSymplectic, int>> queue;
    RefSymplectic start = RefSymplectic::identity(n);
    dist[start.key()] = 0;
    queue.push_back({start, 0});
    while (!queue.empty()) {
        auto [m, d] = std::move(queue.front());
        queue.pop_front();
        if (dist[m.key()] < d) {
            continue;
        }
        for (const auto &g : free_moves) {
            RefSymplectic next = m;
            next.apply(g);
            auto [pos, inserted] = dist.try_emplace(next.key(), d);
            if (inserted || pos->second > d) {
                pos->second = d;
                queue.push_front({next, d});
            }
        }
        for (const auto &g : cx_moves) {
            RefSymplectic next = m;
            next.apply(g);
            auto [pos, inserted] = dist.try_emplace(next.key(), d + 1);
            if (inserted || pos->second > d + 1) {
                pos->second = d + 1;
                queue.push_back({next, d + 1});
            }
        }
    }
    return cache.emplace(key, std::move(dist)).first->second;
}

}  // namespace

int ref_min_cx(const RefSymplectic &target, const std::optional<Edges> &edges, bool allow_permutation) {
    if (target.n > 3) {
        ADD_FAILURE() << "reference search is limited to three qubits";
        return -1;
    }
    std::optional<Edges> norm = edges;
    if (norm) {
        for (auto &e : *norm) {
            e = std::minmax(e.first, e.second);
        }
        std::sort(norm->begin(), norm->end());
    }
    const DistMap &dist = distances(target.n, norm);
    std::vector<uint32_t> p(target.n);
    std::iota(p.begin(), p.end(), 0);
    int best = -1;
    do {
        RefSymplectic t = allow_permutation ? target.relabeled(p) : target;
        auto it = dist.find(t.key());
        if (it != dist.end() && (best < 0 || it->second < best)) {
            best = it->second;
        }
    } while (allow_permutation && std::next_permutation(p.begin(), p.end()));
    return best;
}

ParsedCnf parse_dimacs_text(const std::string &text) {
    ParsedCnf out;
    std::istringstream in(text);
    std::string line;
    bool header = false;
    std::vector<int> current;
    while (std::getline(in, line)) {
        if (line.empty()) {
            ADD_FAILURE() << "empty line in DIMACS output";
            continue;
        }
        if (line[0] == 'c') {
            EXPECT_FALSE(header) << "comment after the problem line";
            continue;
        }
        if (line[0] == 'p') {
            EXPECT_FALSE(header) << "second problem line";
            std::istringstream h(line);
            std::string p, cnf;
            h >> p >> cnf >> out.num_vars >> out.declared_clauses;
            EXPECT_EQ(cnf, "cnf");
            EXPECT_EQ(line, "p cnf " + std::to_string(out.num_vars) + " " + std::to_string(out.declared_clauses));
            header = true;
            continue;
        }
        EXPECT_TRUE(header) << "clause before problem line";
        std::istringstream c(line);
        int lit;
        while (c >> lit) {
            if (lit == 0) {
                out.clauses.push_back(current);
                current.clear();
            } else {
                EXPECT_LE(std::abs(lit), out.num_vars);
                current.push_back(lit);
            }
        }
    }
    EXPECT_TRUE(current.empty()) << "unterminated clause";
    EXPECT_EQ(out.clauses.size(), out.declared_clauses);
    return out;
}

bool satisfies(const CnfFormula &f, const std::vector<bool> &assignment) {
    for (size_t k = 0; k < f.num_clauses(); k++) {
        bool sat = false;
        for (Lit l : f.clause(k)) {
            bool v = assignment[std::abs(l)];
            sat = sat || (l > 0 ? v : !v);
        }
        if (!sat) {
            return false;
        }
    }
    return true;
}

std::set<uint64_t> projected_models(const CnfFormula &f, int visible) {
    int total = f.num_vars();
    EXPECT_LE(total, 22) << "formula too large to enumerate";
    std::set<uint64_t> out;
    std::vector<bool> a(total + 1);
    for (uint64_t m = 0; m < (uint64_t{1} << total); m++) {
        for (int v = 1; v <= total; v++) {
            a[v] = (m >> (v - 1)) & 1;
        }
        if (satisfies(f, a)) {
            out.insert(m & ((uint64_t{1} << visible) - 1));
        }
    }
    return out;
}

}  // namespace cliffsat::testing
