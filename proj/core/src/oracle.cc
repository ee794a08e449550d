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

#include "cliffsat/oracle.h"

#include <algorithm>
#include <deque>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "cliffsat/errors.h"

namespace cliffsat {

namespace {

using Edge = std::pair<uint32_t, uint32_t>;

uint64_t shift(uint64_t v, int k) {
    return k >= 0 ? v << k : v >> -k;
}

/// Gate actions on packed states, done with whole-word masks.
struct Packed {
    uint32_t n;
    uint64_t mx[kOracleMaxQubits] = {};
    uint64_t mz[kOracleMaxQubits] = {};

    explicit Packed(uint32_t n) : n(n) {
        for (uint32_t i = 0; i < 2 * n; i++) {
            for (uint32_t a = 0; a < n; a++) {
                mx[a] |= uint64_t{1} << (2 * n * i + a);
                mz[a] |= uint64_t{1} << (2 * n * i + n + a);
            }
        }
    }

    uint64_t identity() const {
        uint64_t s = 0;
        for (uint32_t a = 0; a < n; a++) {
            s |= uint64_t{1} << (2 * n * a + a);
            s |= uint64_t{1} << (2 * n * (n + a) + n + a);
        }
        return s;
    }

    uint64_t h(uint64_t s, uint32_t a) const {
        uint64_t xa = s & mx[a];
        uint64_t za = s & mz[a];
        return (s & ~(mx[a] | mz[a])) | (xa << n) | (za >> n);
    }
    uint64_t s(uint64_t st, uint32_t a) const {
        return st ^ ((st & mx[a]) << n);
    }
    uint64_t cx(uint64_t st, uint32_t a, uint32_t b) const {
        int d = static_cast<int>(b) - static_cast<int>(a);
        st ^= shift(st & mx[a], d);
        st ^= shift(st & mz[b], -d);
        return st;
    }
    /// The six local x/z transforms: I, H, S, HS, SH, HSH (circuit order).
    uint64_t local(uint64_t st, uint32_t a, int g) const {
        switch (g) {
            case 0:
                return st;
            case 1:
                return h(st, a);
            case 2:
                return s(st, a);
            case 3:
                return s(h(st, a), a);
            case 4:
                return h(s(st, a), a);
            default:
                return h(s(h(st, a), a), a);
        }
    }
    /// Per-qubit minimum over the six transforms of that qubit's columns.
    uint64_t canonical(uint64_t st) const {
        for (uint32_t a = 0; a < n; a++) {
            uint64_t m = mx[a] | mz[a];
            uint64_t best = st;
            for (int g = 1; g < 6; g++) {
                uint64_t v = local(st, a, g);
                if ((v & m) < (best & m)) {
                    best = v;
                }
            }
            st = best;
        }
        return st;
    }
    uint64_t permute_columns(uint64_t st, const std::vector<uint32_t> &p) const {
        uint64_t out = 0;
        for (uint32_t i = 0; i < 2 * n; i++) {
            for (uint32_t a = 0; a < n; a++) {
                uint32_t base = 2 * n * i;
                out |= ((st >> (base + a)) & 1) << (base + p[a]);
                out |= ((st >> (base + n + a)) & 1) << (base + n + p[a]);
            }
        }
        return out;
    }
};

/// Open-addressing map from nonzero packed states to small distances.
class StateTable {
   public:
    StateTable() {
        resize(1 << 12);
    }

    size_t size() const {
        return count_;
    }
    int get(uint64_t key) const {
        size_t k = slot(key);
        return keys_[k] == key ? vals_[k] : -1;
    }
    /// Inserts or lowers the stored value. Returns true if it changed.
    bool lower(uint64_t key, uint8_t val) {
        if (2 * (count_ + 1) > keys_.size()) {
            resize(keys_.size() * 2);
        }
        size_t k = slot(key);
        if (keys_[k] == key) {
            if (val < vals_[k]) {
                vals_[k] = val;
                return true;
            }
            return false;
        }
        keys_[k] = key;
        vals_[k] = val;
        count_++;
        return true;
    }

   private:
    std::vector<uint64_t> keys_;
    std::vector<uint8_t> vals_;
    size_t count_ = 0;

    static uint64_t mix(uint64_t x) {
        x ^= x >> 30;
        x *= 0xbf58476d1ce4e5b9ULL;
        x ^= x >> 27;
        x *= 0x94d049bb133111ebULL;
        x ^= x >> 31;
        return x;
    }
    size_t slot(uint64_t key) const {
        size_t mask = keys_.size() - 1;
        size_t k = mix(key) & mask;
        while (keys_[k] != 0 && keys_[k] != key) {
            k = (k + 1) & mask;
        }
        return k;
    }
    void resize(size_t cap) {
        std::vector<uint64_t> old_keys = std::move(keys_);
        std::vector<uint8_t> old_vals = std::move(vals_);
        keys_.assign(cap, 0);
        vals_.assign(cap, 0);
        count_ = 0;
        for (size_t k = 0; k < old_keys.size(); k++) {
            if (old_keys[k] != 0) {
                size_t s = slot(old_keys[k]);
                keys_[s] = old_keys[k];
                vals_[s] = old_vals[k];
                count_++;
            }
        }
    }
};

std::vector<Edge> allowed_pairs(uint32_t n, const std::optional<CouplingGraph> &coupling) {
    if (coupling && coupling->num_qubits() != n) {
        throw std::invalid_argument("oracle coupling graph size does not match the target");
    }
    std::vector<Edge> out;
    for (uint32_t a = 0; a < n; a++) {
        for (uint32_t b = a + 1; b < n; b++) {
            if (!coupling || coupling->connected(a, b)) {
                out.push_back({a, b});
            }
        }
    }
    return out;
}

uint32_t check_size(const Tableau &t) {
    uint32_t n = static_cast<uint32_t>(t.num_qubits());
    if (n == 0 || n > kOracleMaxQubits) {
        throw CapabilityError("oracle supports 1.." + std::to_string(kOracleMaxQubits) + " qubits, got " +
                              std::to_string(n));
    }
    return n;
}

std::vector<uint64_t> target_states(const Packed &ops, uint64_t target, bool allow_permutation) {
    if (!allow_permutation) {
        return {target};
    }
    std::vector<uint32_t> p(ops.n);
    std::iota(p.begin(), p.end(), 0u);
    std::vector<uint64_t> out;
    do {
        out.push_back(ops.permute_columns(target, p));
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

/// Every nonempty set of pairwise disjoint pairs.
std::vector<std::vector<Edge>> matchings(const std::vector<Edge> &edges) {
    std::vector<std::vector<Edge>> out;
    std::vector<Edge> cur;
    auto rec = [&](auto &&self, size_t from, uint32_t used) -> void {
        for (size_t e = from; e < edges.size(); e++) {
            auto [a, b] = edges[e];
            if ((used >> a) & 1 || (used >> b) & 1) {
                continue;
            }
            cur.push_back(edges[e]);
            out.push_back(cur);
            self(self, e + 1, used | (1u << a) | (1u << b));
            cur.pop_back();
        }
    };
    rec(rec, 0, 0);
    return out;
}

/// Class-level successors: any local dressing on the support, then the CXs.
template <typename F>
void for_each_layer_successor(const Packed &ops, uint64_t st, const std::vector<Edge> &layer, F &&visit) {
    std::vector<uint32_t> support;
    for (auto [a, b] : layer) {
        support.push_back(a);
        support.push_back(b);
    }
    size_t combos = 1;
    for (size_t k = 0; k < support.size(); k++) {
        combos *= 6;
    }
    for (size_t c = 0; c < combos; c++) {
        uint64_t v = st;
        size_t code = c;
        for (uint32_t q : support) {
            v = ops.local(v, q, static_cast<int>(code % 6));
            code /= 6;
        }
        for (auto [a, b] : layer) {
            v = ops.cx(v, a, b);
        }
        visit(ops.canonical(v));
    }
}

/// Level-synchronous BFS over canonical classes. With `goals` empty it
/// enumerates every class reachable from the identity into `seen`.
struct ClassSearch {
    StateTable seen;
    int found = -1;
};

ClassSearch class_bfs(const Packed &ops, const std::vector<std::vector<Edge>> &moves, size_t budget) {
    ClassSearch out;
    uint64_t start = ops.canonical(ops.identity());
    out.seen.lower(start, 0);
    std::vector<uint64_t> frontier{start};
    for (int level = 1; !frontier.empty(); level++) {
        if (level > 255) {
            throw InternalError("class search depth overflow");
        }
        std::vector<uint64_t> next;
        for (uint64_t s : frontier) {
            for (const auto &layer : moves) {
                for_each_layer_successor(ops, s, layer, [&](uint64_t v) {
                    if (out.seen.get(v) < 0) {
                        out.seen.lower(v, static_cast<uint8_t>(level));
                        next.push_back(v);
                    }
                });
            }
            if (out.seen.size() > budget) {
                throw CapabilityError("oracle search exceeded its budget of " + std::to_string(budget) + " classes");
            }
        }
        frontier = std::move(next);
    }
    return out;
}

/// Bidirectional class search. A word of k layers maps class [A] onto
/// [A W], so growing balls around the identity and around the goals and
/// detecting the first class in both gives the distance.
int class_meet(const Packed &ops, const std::vector<std::vector<Edge>> &moves, const std::vector<uint64_t> &goals,
               size_t budget) {
    struct Side {
        StateTable seen;
        std::vector<uint64_t> frontier;
        int level = 0;
    };
    Side fwd, bwd;
    uint64_t start = ops.canonical(ops.identity());
    fwd.seen.lower(start, 0);
    fwd.frontier.push_back(start);
    for (uint64_t g : goals) {
        uint64_t c = ops.canonical(g);
        if (c == start) {
            return 0;
        }
        if (bwd.seen.lower(c, 0)) {
            bwd.frontier.push_back(c);
        }
    }
    while (!fwd.frontier.empty() && !bwd.frontier.empty()) {
        bool grow_fwd = fwd.frontier.size() <= bwd.frontier.size();
        Side &a = grow_fwd ? fwd : bwd;
        const Side &b = grow_fwd ? bwd : fwd;
        if (a.level >= 254) {
            throw InternalError("class search depth overflow");
        }
        int level = a.level + 1;
        std::vector<uint64_t> next;
        int hit = -1;
        for (uint64_t s : a.frontier) {
            for (const auto &layer : moves) {
                for_each_layer_successor(ops, s, layer, [&](uint64_t v) {
                    if (hit >= 0 || a.seen.get(v) >= 0) {
                        return;
                    }
                    a.seen.lower(v, static_cast<uint8_t>(level));
                    next.push_back(v);
                    int other = b.seen.get(v);
                    if (other >= 0) {
                        hit = level + other;
                    }
                });
                if (hit >= 0) {
                    return hit;
                }
            }
            if (fwd.seen.size() + bwd.seen.size() > budget) {
                throw CapabilityError("oracle search exceeded its budget of " + std::to_string(budget) + " classes");
            }
        }
        a.frontier = std::move(next);
        a.level = level;
    }
    return -1;
}

/// 0-1 BFS over raw states with free H/S and unit-cost CX in both directions.
StateTable zero_one_bfs(const Packed &ops, const std::vector<Edge> &edges) {
    StateTable dist;
    std::deque<std::pair<uint64_t, uint8_t>> queue;
    uint64_t start = ops.identity();
    dist.lower(start, 0);
    queue.push_back({start, 0});
    while (!queue.empty()) {
        auto [s, d] = queue.front();
        queue.pop_front();
        if (dist.get(s) < d) {
            continue;
        }
        for (uint32_t a = 0; a < ops.n; a++) {
            for (uint64_t v : {ops.h(s, a), ops.s(s, a)}) {
                if (dist.lower(v, d)) {
                    queue.push_front({v, d});
                }
            }
        }
        for (auto [a, b] : edges) {
            for (uint64_t v : {ops.cx(s, a, b), ops.cx(s, b, a)}) {
                if (dist.lower(v, static_cast<uint8_t>(d + 1))) {
                    queue.push_back({v, static_cast<uint8_t>(d + 1)});
                }
            }
        }
    }
    return dist;
}

using CacheKey = std::pair<uint32_t, std::vector<Edge>>;

std::mutex cache_mutex;
std::map<CacheKey, std::shared_ptr<const StateTable>> count_cache;
std::map<CacheKey, std::shared_ptr<const StateTable>> depth_cache;

constexpr size_t kCountBudget = 3'000'000;
constexpr size_t kDepthBudget = 1'000'000;

}  // namespace

CanonicalState pack_xz(const Tableau &t) {
    uint32_t n = check_size(t);
    uint64_t bits = 0;
    for (uint32_t i = 0; i < 2 * n; i++) {
        for (uint32_t a = 0; a < n; a++) {
            bits |= uint64_t{t.x(i, a)} << (2 * n * i + a);
            bits |= uint64_t{t.z(i, a)} << (2 * n * i + n + a);
        }
    }
    return {bits};
}

int min_cx_count(const Tableau &target, const std::optional<CouplingGraph> &coupling, bool allow_permutation) {
    uint32_t n = check_size(target);
    Packed ops(n);
    auto edges = allowed_pairs(n, coupling);
    auto goals = target_states(ops, pack_xz(target).bits, allow_permutation);
    if (n == kOracleMaxQubits) {
        std::vector<std::vector<Edge>> moves;
        for (auto e : edges) {
            moves.push_back({e});
        }
        return class_meet(ops, moves, goals, kCountBudget);
    }
    std::shared_ptr<const StateTable> table;
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        auto &slot = count_cache[{n, edges}];
        if (!slot) {
            slot = std::make_shared<StateTable>(zero_one_bfs(ops, edges));
        }
        table = slot;
    }
    int best = -1;
    for (uint64_t g : goals) {
        int v = table->get(g);
        if (v >= 0 && (best < 0 || v < best)) {
            best = v;
        }
    }
    return best;
}

int min_cx_depth(const Tableau &target, const std::optional<CouplingGraph> &coupling, bool allow_permutation) {
    uint32_t n = check_size(target);
    Packed ops(n);
    auto edges = allowed_pairs(n, coupling);
    auto goals = target_states(ops, pack_xz(target).bits, allow_permutation);
    auto moves = matchings(edges);
    if (n == kOracleMaxQubits) {
        return class_meet(ops, moves, goals, kDepthBudget);
    }
    for (auto &g : goals) {
        g = ops.canonical(g);
    }
    std::shared_ptr<const StateTable> table;
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        auto &slot = depth_cache[{n, edges}];
        if (!slot) {
            slot = std::make_shared<StateTable>(class_bfs(ops, moves, SIZE_MAX).seen);
        }
        table = slot;
    }
    int best = -1;
    for (uint64_t g : goals) {
        int v = table->get(g);
        if (v >= 0 && (best < 0 || v < best)) {
            best = v;
        }
    }
    return best;
}

namespace detail {

int min_cx_count_by_classes(const Tableau &target, const std::optional<CouplingGraph> &coupling) {
    uint32_t n = check_size(target);
    Packed ops(n);
    std::vector<std::vector<Edge>> moves;
    for (auto e : allowed_pairs(n, coupling)) {
        moves.push_back({e});
    }
    return class_meet(ops, moves, {pack_xz(target).bits}, kCountBudget);
}

uint64_t count_local_classes(uint32_t n) {
    if (n == 0 || n >= kOracleMaxQubits) {
        throw CapabilityError("class enumeration supports 1..3 qubits");
    }
    Packed ops(n);
    auto moves = matchings(allowed_pairs(n, std::nullopt));
    return class_bfs(ops, moves, SIZE_MAX).seen.size();
}

}  // namespace detail

}  // namespace cliffsat
