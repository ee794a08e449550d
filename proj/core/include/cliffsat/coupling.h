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

#ifndef CLIFFSAT_COUPLING_H
#define CLIFFSAT_COUPLING_H

#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>

namespace cliffsat {

/// Undirected hardware connectivity. Edges are stored as (min, max).
class CouplingGraph {
   public:
    CouplingGraph() = default;
    explicit CouplingGraph(uint32_t n_physical);

    uint32_t num_qubits() const {
        return n_;
    }
    const std::set<std::pair<uint32_t, uint32_t>> &edges() const {
        return edges_;
    }

    /// Throws std::invalid_argument on self-loops and RangeError on indices >= n.
    void add_edge(uint32_t a, uint32_t b);
    bool connected(uint32_t a, uint32_t b) const;

    /// The subgraph induced on qubits 0..n-1.
    CouplingGraph restricted(uint32_t n) const;

    bool operator==(const CouplingGraph &other) const = default;

   private:
    uint32_t n_ = 0;
    std::set<std::pair<uint32_t, uint32_t>> edges_;
};

/// Accepts either an edge list ("a b" per line, '#' comments, n = 1 + max
/// index) or JSON {"n": int, "edges": [[a, b], ...]}.
CouplingGraph parse_coupling(std::string_view text);
CouplingGraph load_coupling(const std::filesystem::path &path);

/// JSON form understood by parse_coupling.
std::string coupling_to_json(const CouplingGraph &g);

/// "line", "ring" (need n) or "grid" (rows x cols).
CouplingGraph builtin_topology(std::string_view name, std::optional<uint32_t> n);
CouplingGraph grid_topology(uint32_t rows, uint32_t cols);

/// Resolves a --coupling argument: an existing file, a shipped platform name
/// (looked up in `data_dir`), or a compact builtin such as "line4", "ring5",
/// "grid2x3". Bare "line"/"ring" take their size from `default_n`.
CouplingGraph resolve_coupling(
    std::string_view spec, uint32_t default_n, const std::filesystem::path &data_dir = {});

}  // namespace cliffsat

#endif
