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

#include "cliffsat/circuit.h"

#include <algorithm>
#include <cctype>
#include <optional>
#include <sstream>

#include "cliffsat/errors.h"

namespace cliffsat {

std::string_view gate_name(GateKind kind) {
    switch (kind) {
        case GateKind::H:
            return "h";
        case GateKind::S:
            return "s";
        case GateKind::SDG:
            return "sdg";
        case GateKind::X:
            return "x";
        case GateKind::Y:
            return "y";
        case GateKind::Z:
            return "z";
        case GateKind::CX:
            return "cx";
        case GateKind::CZ:
            return "cz";
        case GateKind::SWAP:
            return "swap";
        case GateKind::ID:
            return "id";
        case GateKind::OPAQUE:
            return "opaque";
    }
    return "?";
}

size_t gate_arity(GateKind kind) {
    switch (kind) {
        case GateKind::CX:
        case GateKind::CZ:
        case GateKind::SWAP:
            return 2;
        case GateKind::OPAQUE:
            return 0;
        default:
            return 1;
    }
}

namespace {

std::optional<GateKind> clifford_kind(std::string_view name) {
    static constexpr std::pair<std::string_view, GateKind> table[] = {
        {"h", GateKind::H},   {"s", GateKind::S},       {"sdg", GateKind::SDG},   {"x", GateKind::X},
        {"y", GateKind::Y},   {"z", GateKind::Z},       {"cx", GateKind::CX},     {"CX", GateKind::CX},
        {"cz", GateKind::CZ}, {"swap", GateKind::SWAP}, {"id", GateKind::ID},
    };
    for (const auto &[n, k] : table) {
        if (n == name) {
            return k;
        }
    }
    return std::nullopt;
}

Gate make(GateKind kind, std::vector<uint32_t> qubits) {
    Gate g;
    g.kind = kind;
    g.qubits = std::move(qubits);
    return g;
}

}  // namespace

Gate Gate::h(uint32_t q) {
    return make(GateKind::H, {q});
}
Gate Gate::s(uint32_t q) {
    return make(GateKind::S, {q});
}
Gate Gate::sdg(uint32_t q) {
    return make(GateKind::SDG, {q});
}
Gate Gate::x(uint32_t q) {
    return make(GateKind::X, {q});
}
Gate Gate::y(uint32_t q) {
    return make(GateKind::Y, {q});
}
Gate Gate::z(uint32_t q) {
    return make(GateKind::Z, {q});
}
Gate Gate::id(uint32_t q) {
    return make(GateKind::ID, {q});
}
Gate Gate::cx(uint32_t control, uint32_t target) {
    return make(GateKind::CX, {control, target});
}
Gate Gate::cz(uint32_t a, uint32_t b) {
    return make(GateKind::CZ, {a, b});
}
Gate Gate::swap(uint32_t a, uint32_t b) {
    return make(GateKind::SWAP, {a, b});
}

Gate Gate::opaque(std::string label, std::vector<uint32_t> qubits) {
    Gate g = make(GateKind::OPAQUE, std::move(qubits));
    g.label = std::move(label);
    return g;
}

std::string Gate::str() const {
    if (kind == GateKind::OPAQUE) {
        return "OPAQUE(" + label + ")";
    }
    std::string out(gate_name(kind));
    out += '(';
    for (size_t k = 0; k < qubits.size(); k++) {
        if (k) {
            out += ',';
        }
        out += std::to_string(qubits[k]);
    }
    out += ')';
    return out;
}

Circuit::Circuit(uint32_t num_qubits, std::vector<Gate> gates) : num_qubits(num_qubits) {
    header = {"OPENQASM 2.0;", "include \"qelib1.inc\";", "qreg q[" + std::to_string(num_qubits) + "];"};
    qregs = {{"q", 0, num_qubits}};
    for (auto &g : gates) {
        append(std::move(g));
    }
}

Circuit &Circuit::append(Gate g) {
    for (uint32_t q : g.qubits) {
        if (q >= num_qubits) {
            throw RangeError(
                "gate " + g.str() + " touches qubit " + std::to_string(q) + " of a " + std::to_string(num_qubits) +
                "-qubit circuit");
        }
    }
    size_t arity = gate_arity(g.kind);
    if (arity && g.qubits.size() != arity) {
        throw std::invalid_argument("gate " + g.str() + " has the wrong number of qubits");
    }
    if (arity == 2 && g.qubits[0] == g.qubits[1]) {
        throw std::invalid_argument("gate " + g.str() + " needs two distinct qubits");
    }
    gates.push_back(std::move(g));
    return *this;
}

bool Circuit::is_pure_clifford() const {
    return std::all_of(gates.begin(), gates.end(), [](const Gate &g) { return g.is_clifford(); });
}

std::string Circuit::operand(uint32_t qubit) const {
    for (const auto &r : qregs) {
        if (qubit >= r.offset && qubit < r.offset + r.size) {
            return r.name + "[" + std::to_string(qubit - r.offset) + "]";
        }
    }
    return "q[" + std::to_string(qubit) + "]";
}

Gate Circuit::relabel(const Gate &g, std::span<const uint32_t> wire_of) const {
    Gate out = g;
    bool moved = false;
    for (auto &q : out.qubits) {
        uint32_t w = wire_of[q];
        moved |= w != q;
        q = w;
    }
    if (g.kind == GateKind::OPAQUE && moved) {
        std::string label = out.head;
        for (size_t k = 0; k < out.qubits.size(); k++) {
            label += k ? "," : " ";
            label += operand(out.qubits[k]);
        }
        if (!out.tail.empty()) {
            label += " " + out.tail;
        }
        out.label = label + ";";
    }
    return out;
}

Circuit Circuit::empty_like() const {
    Circuit c;
    c.num_qubits = num_qubits;
    c.header = header;
    c.qregs = qregs;
    return c;
}

namespace {

struct Statement {
    std::string text;  // whitespace-normalized, without the trailing ';'
    size_t line = 0;
    bool block = false;  // gate definition ending in '}'
};

std::string normalize(std::string_view raw) {
    std::string out;
    bool pending_space = false;
    for (char c : raw) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            pending_space = !out.empty();
            continue;
        }
        if (pending_space) {
            out += ' ';
            pending_space = false;
        }
        out += c;
    }
    return out;
}

bool starts_with_word(std::string_view s, std::string_view word) {
    if (s.substr(0, word.size()) != word) {
        return false;
    }
    return s.size() == word.size() || !(std::isalnum(static_cast<unsigned char>(s[word.size()])) || s[word.size()] == '_');
}

std::vector<Statement> split_statements(std::string_view text) {
    std::vector<Statement> out;
    std::string current;
    size_t line = 1;
    size_t start_line = 0;
    int brace_depth = 0;
    bool in_string = false;
    for (size_t k = 0; k < text.size(); k++) {
        char c = text[k];
        if (!in_string && c == '/' && k + 1 < text.size() && text[k + 1] == '/') {
            while (k < text.size() && text[k] != '\n') {
                k++;
            }
            if (k < text.size()) {
                line++;
                current += ' ';
            }
            continue;
        }
        if (c == '\n') {
            line++;
        }
        if (!start_line && !std::isspace(static_cast<unsigned char>(c))) {
            start_line = line;
        }
        if (c == '"') {
            in_string = !in_string;
        }
        current += c;
        if (in_string) {
            continue;
        }
        if (c == '{') {
            brace_depth++;
        } else if (c == '}') {
            if (--brace_depth < 0) {
                throw ParseError("unbalanced '}'", line);
            }
            if (brace_depth == 0) {
                out.push_back({normalize(current), start_line, true});
                current.clear();
                start_line = 0;
            }
        } else if (c == ';' && brace_depth == 0) {
            current.pop_back();
            out.push_back({normalize(current), start_line, false});
            current.clear();
            start_line = 0;
        }
    }
    if (in_string) {
        throw ParseError("unterminated string literal", line);
    }
    if (brace_depth) {
        throw ParseError("unterminated gate body", line);
    }
    if (!normalize(current).empty()) {
        throw ParseError("statement is missing its terminating ';'", start_line ? start_line : line);
    }
    return out;
}

struct Cursor {
    std::string_view s;
    size_t pos = 0;
    size_t line = 0;

    void skip_space() {
        while (pos < s.size() && s[pos] == ' ') {
            pos++;
        }
    }
    bool done() {
        skip_space();
        return pos >= s.size();
    }
    char peek() {
        skip_space();
        return pos < s.size() ? s[pos] : '\0';
    }
    bool accept(char c) {
        if (peek() == c) {
            pos++;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!accept(c)) {
            throw ParseError(std::string("expected '") + c + "' in '" + std::string(s) + "'", line);
        }
    }
    std::string identifier() {
        skip_space();
        size_t b = pos;
        if (pos < s.size() && (std::isalpha(static_cast<unsigned char>(s[pos])) || s[pos] == '_')) {
            pos++;
            while (pos < s.size() && (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_')) {
                pos++;
            }
        }
        if (b == pos) {
            throw ParseError("expected an identifier in '" + std::string(s) + "'", line);
        }
        return std::string(s.substr(b, pos - b));
    }
    uint64_t integer() {
        skip_space();
        size_t b = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
            pos++;
        }
        if (b == pos) {
            throw ParseError("expected an integer in '" + std::string(s) + "'", line);
        }
        if (pos - b > 9) {
            throw ParseError("integer too large in '" + std::string(s) + "'", line);
        }
        return std::stoull(std::string(s.substr(b, pos - b)));
    }
    /// Consumes a balanced "( ... )" group and returns it verbatim.
    std::string paren_group() {
        skip_space();
        size_t b = pos;
        int depth = 0;
        do {
            if (pos >= s.size()) {
                throw ParseError("unbalanced '(' in '" + std::string(s) + "'", line);
            }
            if (s[pos] == '(') {
                depth++;
            } else if (s[pos] == ')') {
                depth--;
            }
            pos++;
        } while (depth > 0);
        return std::string(s.substr(b, pos - b));
    }
};

struct Operand {
    const QuantumRegister *reg;
    std::optional<uint32_t> index;
};

class QasmReader {
   public:
    Circuit parse(std::string_view text) {
        auto statements = split_statements(text);
        for (const auto &st : statements) {
            if (st.text.empty()) {
                continue;
            }
            line_ = st.line;
            if (st.block) {
                if (!starts_with_word(st.text, "gate")) {
                    throw ParseError("unexpected '{' block", st.line);
                }
                circuit_.header.push_back(st.text);
                continue;
            }
            std::string_view t = st.text;
            if (starts_with_word(t, "OPENQASM")) {
                circuit_.header.push_back(st.text + ";");
            } else if (starts_with_word(t, "include") || starts_with_word(t, "opaque")) {
                circuit_.header.push_back(st.text + ";");
            } else if (starts_with_word(t, "qreg") || starts_with_word(t, "creg")) {
                declare_register(st);
                circuit_.header.push_back(st.text + ";");
            } else {
                instruction(st);
            }
        }
        return std::move(circuit_);
    }

   private:
    void declare_register(const Statement &st) {
        Cursor c{st.text, 0, st.line};
        std::string kind = c.identifier();
        std::string name = c.identifier();
        c.expect('[');
        uint64_t size = c.integer();
        c.expect(']');
        if (!c.done()) {
            throw ParseError("trailing text after register declaration", st.line);
        }
        if (size == 0) {
            throw ParseError("register '" + name + "' has size 0", st.line);
        }
        if (kind == "qreg") {
            for (const auto &r : circuit_.qregs) {
                if (r.name == name) {
                    throw ParseError("duplicate register '" + name + "'", st.line);
                }
            }
            circuit_.qregs.push_back({name, circuit_.num_qubits, static_cast<uint32_t>(size)});
            circuit_.num_qubits += static_cast<uint32_t>(size);
        } else {
            cregs_.push_back(name);
        }
    }

    const QuantumRegister *find_qreg(const std::string &name) const {
        for (const auto &r : circuit_.qregs) {
            if (r.name == name) {
                return &r;
            }
        }
        return nullptr;
    }

    Operand operand(Cursor &c) {
        std::string name = c.identifier();
        const QuantumRegister *reg = find_qreg(name);
        if (!reg) {
            throw ParseError("unknown quantum register '" + name + "'", line_);
        }
        Operand op{reg, std::nullopt};
        if (c.accept('[')) {
            uint64_t idx = c.integer();
            c.expect(']');
            if (idx >= reg->size) {
                throw RangeError(
                    "line " + std::to_string(line_) + ": index " + std::to_string(idx) + " out of range for register '" +
                    name + "[" + std::to_string(reg->size) + "]'");
            }
            op.index = static_cast<uint32_t>(idx);
        }
        return op;
    }

    void instruction(const Statement &st) {
        Cursor c{st.text, 0, st.line};
        std::string prefix;
        if (starts_with_word(st.text, "if")) {
            c.identifier();
            prefix = "if" + c.paren_group() + " ";
        }
        std::string name = c.identifier();
        std::string params;
        if (c.peek() == '(') {
            params = c.paren_group();
        }
        size_t operands_begin = c.pos;
        std::vector<Operand> ops;
        if (!c.done() && c.peek() != '-') {
            ops.push_back(operand(c));
            while (c.accept(',')) {
                ops.push_back(operand(c));
            }
        }
        c.skip_space();
        size_t operands_end = c.pos;
        std::string tail;
        if (!c.done()) {
            if (name != "measure" || !c.accept('-') || !c.accept('>')) {
                throw ParseError("unexpected text in '" + st.text + "'", st.line);
            }
            c.identifier();
            if (c.accept('[')) {
                c.integer();
                c.expect(']');
            }
            if (!c.done()) {
                throw ParseError("unexpected text in '" + st.text + "'", st.line);
            }
            tail = normalize(st.text.substr(operands_end));
        }

        auto kind = prefix.empty() ? clifford_kind(name) : std::nullopt;
        if (kind) {
            if (!params.empty()) {
                throw ParseError("gate '" + name + "' takes no parameters", st.line);
            }
            clifford(*kind, ops, st);
            return;
        }
        if (ops.empty()) {
            throw ParseError("instruction '" + name + "' has no qubit operands", st.line);
        }
        std::string head = normalize(st.text.substr(0, operands_begin));
        uint32_t width = 0;
        for (const auto &op : ops) {
            if (!op.index) {
                if (width && width != op.reg->size) {
                    throw ParseError("mismatched register sizes in broadcast", st.line);
                }
                width = op.reg->size;
            }
        }
        if (name == "barrier" || width == 0) {
            std::vector<uint32_t> qubits;
            for (const auto &op : ops) {
                if (op.index) {
                    qubits.push_back(op.reg->offset + *op.index);
                } else {
                    for (uint32_t k = 0; k < op.reg->size; k++) {
                        qubits.push_back(op.reg->offset + k);
                    }
                }
            }
            Gate g = Gate::opaque(st.text + ";", std::move(qubits));
            g.head = head;
            g.tail = tail;
            circuit_.gates.push_back(std::move(g));
            return;
        }
        // Register-wide operands expand to one statement per index, so that
        // each statement can later be moved to other wires on its own.
        bool tail_indexed = tail.find('[') != std::string::npos;
        for (uint32_t k = 0; k < width; k++) {
            std::vector<uint32_t> qubits;
            for (const auto &op : ops) {
                qubits.push_back(op.reg->offset + (op.index ? *op.index : k));
            }
            std::string item_tail = tail.empty() || tail_indexed ? tail : tail + "[" + std::to_string(k) + "]";
            std::string label = head;
            for (size_t j = 0; j < qubits.size(); j++) {
                label += j ? "," : " ";
                label += circuit_.operand(qubits[j]);
            }
            if (!item_tail.empty()) {
                label += " " + item_tail;
            }
            Gate g = Gate::opaque(label + ";", std::move(qubits));
            g.head = head;
            g.tail = item_tail;
            circuit_.gates.push_back(std::move(g));
        }
    }

    void clifford(GateKind kind, const std::vector<Operand> &ops, const Statement &st) {
        size_t arity = gate_arity(kind);
        if (ops.size() != arity) {
            throw ParseError(
                "gate '" + std::string(gate_name(kind)) + "' expects " + std::to_string(arity) + " operand(s)", st.line);
        }
        // Register-wide operands broadcast; all whole registers must agree in size.
        uint32_t width = 1;
        for (const auto &op : ops) {
            if (!op.index) {
                if (width != 1 && width != op.reg->size) {
                    throw ParseError("mismatched register sizes in broadcast", st.line);
                }
                width = op.reg->size;
            }
        }
        for (uint32_t k = 0; k < width; k++) {
            std::vector<uint32_t> qubits;
            for (const auto &op : ops) {
                qubits.push_back(op.reg->offset + (op.index ? *op.index : k));
            }
            if (arity == 2 && qubits[0] == qubits[1]) {
                throw ParseError("gate '" + std::string(gate_name(kind)) + "' needs two distinct qubits", st.line);
            }
            circuit_.gates.push_back(make(kind, std::move(qubits)));
        }
    }

    Circuit circuit_;
    std::vector<std::string> cregs_;
    size_t line_ = 0;
};

}  // namespace

Circuit parse_qasm(std::string_view text) {
    return QasmReader().parse(text);
}

std::string emit_qasm(const Circuit &c, std::span<const std::string> comments) {
    std::ostringstream out;
    bool comments_done = comments.empty();
    auto put_comments = [&]() {
        for (const auto &line : comments) {
            out << "// " << line << "\n";
        }
        comments_done = true;
    };
    if (!comments_done && (c.header.empty() || !starts_with_word(c.header.front(), "OPENQASM"))) {
        put_comments();
    }
    for (const auto &h : c.header) {
        out << h << "\n";
        if (!comments_done) {
            put_comments();
        }
    }
    for (const auto &g : c.gates) {
        if (g.kind == GateKind::OPAQUE) {
            out << g.label << "\n";
            continue;
        }
        out << gate_name(g.kind);
        for (size_t k = 0; k < g.qubits.size(); k++) {
            out << (k ? "," : " ") << c.operand(g.qubits[k]);
        }
        out << ";\n";
    }
    return out.str();
}

Metrics compute_metrics(const Circuit &c) {
    Metrics m;
    std::vector<uint64_t> level(c.num_qubits, 0);
    for (const auto &g : c.gates) {
        m.gate_count++;
        if (g.kind != GateKind::CX) {
            continue;
        }
        m.cx_count++;
        uint64_t v = 1 + std::max(level[g.qubits[0]], level[g.qubits[1]]);
        level[g.qubits[0]] = v;
        level[g.qubits[1]] = v;
        m.cx_depth = std::max(m.cx_depth, v);
    }
    return m;
}

std::vector<Gate> decompose_to_base(const Gate &g) {
    switch (g.kind) {
        case GateKind::H:
        case GateKind::S:
        case GateKind::X:
        case GateKind::Y:
        case GateKind::Z:
        case GateKind::CX:
            return {g};
        case GateKind::SDG:
            return {Gate::s(g.qubits[0]), Gate::s(g.qubits[0]), Gate::s(g.qubits[0])};
        case GateKind::CZ:
            return {Gate::h(g.qubits[1]), Gate::cx(g.qubits[0], g.qubits[1]), Gate::h(g.qubits[1])};
        case GateKind::SWAP:
            return {
                Gate::cx(g.qubits[0], g.qubits[1]),
                Gate::cx(g.qubits[1], g.qubits[0]),
                Gate::cx(g.qubits[0], g.qubits[1]),
            };
        case GateKind::ID:
            return {};
        case GateKind::OPAQUE:
            break;
    }
    throw UnsupportedGateError("cannot decompose opaque gate '" + g.label + "'");
}

Circuit decompose_circuit(const Circuit &c) {
    Circuit out = c.empty_like();
    for (const auto &g : c.gates) {
        if (g.kind == GateKind::OPAQUE) {
            out.gates.push_back(g);
            continue;
        }
        for (auto &b : decompose_to_base(g)) {
            out.gates.push_back(std::move(b));
        }
    }
    return out;
}

}  // namespace cliffsat
