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

#include "cliffsat/coupling.h"

#include <charconv>
#include <fstream>
#include <iterator>
#include <regex>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "cliffsat/errors.h"
#include "json.hpp"

namespace cliffsat {

CouplingGraph::CouplingGraph(uint32_t n_physical) : n_(n_physical) {
}

void CouplingGraph::add_edge(uint32_t a, uint32_t b) {
    if (a == b) {
        throw std::invalid_argument("coupling self-loop on qubit " + std::to_string(a));
    }
    if (a >= n_ || b >= n_) {
        throw RangeError(
            "coupling edge (" + std::to_string(a) + "," + std::to_string(b) + ") outside " + std::to_string(n_) +
            " qubits");
    }
    edges_.insert({std::min(a, b), std::max(a, b)});
}

bool CouplingGraph::connected(uint32_t a, uint32_t b) const {
    return edges_.count({std::min(a, b), std::max(a, b)}) > 0;
}

CouplingGraph CouplingGraph::restricted(uint32_t n) const {
    CouplingGraph out(std::min(n, n_));
    for (auto [a, b] : edges_) {
        if (b < out.n_) {
            out.edges_.insert({a, b});
        }
    }
    return out;
}

namespace {

uint32_t parse_index(std::string_view tok, size_t line) {
    uint32_t v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size()) {
        throw ParseError("expected a qubit index, got '" + std::string(tok) + "'", line);
    }
    return v;
}

CouplingGraph parse_json(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error &e) {
        throw ParseError(std::string("coupling JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("n") || !j.contains("edges") || !j["n"].is_number_unsigned() ||
        !j["edges"].is_array()) {
        throw ParseError("coupling JSON must be {\"n\": int, \"edges\": [[a, b], ...]}");
    }
    CouplingGraph g(j["n"].get<uint32_t>());
    for (const auto &e : j["edges"]) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_number_unsigned() || !e[1].is_number_unsigned()) {
            throw ParseError("coupling JSON edge " + e.dump() + " is not a pair of indices");
        }
        uint32_t a = e[0].get<uint32_t>();
        uint32_t b = e[1].get<uint32_t>();
        if (a == b) {
            throw ParseError("coupling self-loop on qubit " + std::to_string(a));
        }
        g.add_edge(a, b);
    }
    return g;
}

CouplingGraph parse_edge_list(std::string_view text) {
    std::vector<std::pair<uint32_t, uint32_t>> pairs;
    uint32_t max_index = 0;
    bool any = false;
    std::istringstream in{std::string(text)};
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        line_no++;
        if (auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        std::istringstream words(line);
        std::vector<std::string> toks{std::istream_iterator<std::string>(words), std::istream_iterator<std::string>()};
        if (toks.empty()) {
            continue;
        }
        if (toks.size() != 2) {
            throw ParseError("expected 'a b', got " + std::to_string(toks.size()) + " tokens", line_no);
        }
        uint32_t a = parse_index(toks[0], line_no);
        uint32_t b = parse_index(toks[1], line_no);
        if (a == b) {
            throw ParseError("coupling self-loop on qubit " + std::to_string(a), line_no);
        }
        pairs.push_back({a, b});
        max_index = std::max({max_index, a, b});
        any = true;
    }
    CouplingGraph g(any ? max_index + 1 : 0);
    for (auto [a, b] : pairs) {
        g.add_edge(a, b);
    }
    return g;
}

}  // namespace

CouplingGraph parse_coupling(std::string_view text) {
    size_t first = text.find_first_not_of(" \t\r\n");
    if (first != std::string_view::npos && text[first] == '{') {
        return parse_json(text);
    }
    return parse_edge_list(text);
}

CouplingGraph load_coupling(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw EnvironmentError("cannot read coupling file " + path.string());
    }
    std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    return parse_coupling(text);
}

std::string coupling_to_json(const CouplingGraph &g) {
    nlohmann::json edges = nlohmann::json::array();
    for (auto [a, b] : g.edges()) {
        edges.push_back({a, b});
    }
    nlohmann::json j;
    j["n"] = g.num_qubits();
    j["edges"] = std::move(edges);
    return j.dump();
}

CouplingGraph grid_topology(uint32_t rows, uint32_t cols) {
    if (rows == 0 || cols == 0) {
        throw std::invalid_argument("grid dimensions must be positive");
    }
    CouplingGraph g(rows * cols);
    for (uint32_t r = 0; r < rows; r++) {
        for (uint32_t c = 0; c < cols; c++) {
            uint32_t q = r * cols + c;
            if (c + 1 < cols) {
                g.add_edge(q, q + 1);
            }
            if (r + 1 < rows) {
                g.add_edge(q, q + cols);
            }
        }
    }
    return g;
}

CouplingGraph builtin_topology(std::string_view name, std::optional<uint32_t> n) {
    if (name == "line" || name == "ring") {
        if (!n || *n == 0) {
            throw std::invalid_argument(std::string(name) + " topology needs a positive size");
        }
        CouplingGraph g(*n);
        for (uint32_t q = 0; q + 1 < *n; q++) {
            g.add_edge(q, q + 1);
        }
        if (name == "ring" && *n >= 3) {
            g.add_edge(*n - 1, 0);
        }
        return g;
    }
    static const std::regex grid_re(R"(grid\(?(\d+)\s*[x,]\s*(\d+)\)?)");
    std::cmatch m;
    std::string s(name);
    if (std::regex_match(s.c_str(), m, grid_re)) {
        return grid_topology(static_cast<uint32_t>(std::stoul(m[1])), static_cast<uint32_t>(std::stoul(m[2])));
    }
    throw std::invalid_argument("unknown topology '" + std::string(name) + "'");
}

CouplingGraph resolve_coupling(std::string_view spec, uint32_t default_n, const std::filesystem::path &data_dir) {
    std::filesystem::path as_path{std::string(spec)};
    std::error_code ec;
    if (std::filesystem::is_regular_file(as_path, ec)) {
        return load_coupling(as_path);
    }
    if (!data_dir.empty()) {
        auto asset = data_dir / (std::string(spec) + ".json");
        if (std::filesystem::is_regular_file(asset, ec)) {
            return load_coupling(asset);
        }
    }
    static const std::regex sized_re(R"((line|ring)(\d+))");
    std::cmatch m;
    std::string s(spec);
    if (std::regex_match(s.c_str(), m, sized_re)) {
        return builtin_topology(m[1].str(), static_cast<uint32_t>(std::stoul(m[2])));
    }
    if (s == "line" || s == "ring") {
        return builtin_topology(s, default_n);
    }
    return builtin_topology(s, std::nullopt);
}

}  // namespace cliffsat
