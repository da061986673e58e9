#include "spis/textio.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

namespace spis {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

} // namespace

TruthTable parse_truth_table(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string header;
    if (!std::getline(in, header)) throw SyntaxError("missing truth-table header");
    auto h = trim(header);
    if (h.substr(0, 2) != "n=") throw SyntaxError("truth-table header must be n=<arity>");
    int arity = 0;
    try {
        arity = std::stoi(std::string(h.substr(2)));
    } catch (const std::exception&) {
        throw SyntaxError("bad arity in truth-table header");
    }
    if (arity < 0 || arity > 24) throw SyntaxError("unreasonable truth-table arity");
    std::string bits;
    std::string line;
    while (std::getline(in, line)) bits += std::string(trim(line));
    if (bits.size() != (std::size_t{1} << arity))
        throw SyntaxError("expected " + std::to_string(std::size_t{1} << arity) +
                          " output bits, got " + std::to_string(bits.size()));
    TruthTable t = TruthTable::of_arity(arity);
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] != '0' && bits[i] != '1') throw SyntaxError("truth-table bits must be 0/1");
        t.outputs[i] = bits[i] == '1';
    }
    return t;
}

std::string render_truth_table(const TruthTable& t) {
    std::string out = "n=" + std::to_string(t.arity) + "\n";
    for (bool b : t.outputs) out += b ? '1' : '0';
    out += '\n';
    return out;
}

Bits parse_bits(std::string_view text) {
    Bits bits;
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c))) continue;
        if (c == '0')
            bits.push_back(false);
        else if (c == '1')
            bits.push_back(true);
        else
            throw SyntaxError(std::string("bad bit character '") + c + "'");
    }
    return bits;
}

std::string render_bits(const Bits& bits) {
    std::string out;
    out.reserve(bits.size());
    for (bool b : bits) out += b ? '1' : '0';
    return out;
}

CnfFormula parse_dimacs(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string tok;
    bool header_seen = false;
    int declared_vars = 0;
    CnfFormula cnf;
    Clause current;
    while (in >> tok) {
        if (tok == "c" || tok[0] == 'c') { // comment line
            std::string rest;
            std::getline(in, rest);
            continue;
        }
        if (tok == "p") {
            std::string kind;
            long vars = 0, clauses = 0;
            if (!(in >> kind >> vars >> clauses) || kind != "cnf")
                throw SyntaxError("bad DIMACS problem line");
            declared_vars = static_cast<int>(vars);
            header_seen = true;
            continue;
        }
        long lit = 0;
        try {
            lit = std::stol(tok);
        } catch (const std::exception&) {
            throw SyntaxError("bad DIMACS token '" + tok + "'");
        }
        if (!header_seen) throw SyntaxError("DIMACS clauses before the problem line");
        if (lit == 0) {
            if (current.empty()) throw EmptyClause("empty clause in DIMACS input");
            cnf.clauses.push_back(std::move(current));
            current.clear();
            continue;
        }
        int var = static_cast<int>(lit > 0 ? lit : -lit);
        if (declared_vars && var > declared_vars)
            throw SyntaxError("literal beyond declared variable count");
        current.push_back(Literal{var, lit > 0});
    }
    if (!current.empty()) throw SyntaxError("unterminated DIMACS clause");
    if (!header_seen) throw SyntaxError("missing DIMACS problem line");
    return cnf;
}

std::string render_dimacs(const CnfFormula& cnf) {
    std::ostringstream out;
    out << "p cnf " << max_var(cnf) << ' ' << cnf.clauses.size() << '\n';
    for (const auto& clause : cnf.clauses) {
        for (const auto& lit : clause) out << (lit.positive ? lit.var : -lit.var) << ' ';
        out << "0\n";
    }
    return out.str();
}

namespace {

struct FormulaParser {
    std::string_view text;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    bool eat(char c) {
        skip_ws();
        if (pos < text.size() && text[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(const std::string& msg) {
        throw SyntaxError(msg + " at offset " + std::to_string(pos));
    }

    Formula or_expr() {
        Formula lhs = and_expr();
        while (eat('|')) lhs = f_or(lhs, and_expr());
        return lhs;
    }
    Formula and_expr() {
        Formula lhs = unary();
        while (eat('&')) lhs = f_and(lhs, unary());
        return lhs;
    }
    Formula unary() {
        if (eat('~')) return f_not(unary());
        if (eat('(')) {
            Formula inner = or_expr();
            if (!eat(')')) fail("expected ')'");
            return inner;
        }
        skip_ws();
        if (pos < text.size() && text[pos] == 'v') {
            ++pos;
            std::size_t start = pos;
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
            if (start == pos) fail("expected a variable index after 'v'");
            return f_var(std::stoi(std::string(text.substr(start, pos - start))));
        }
        fail("expected a formula");
    }
};

void render_formula_into(const Formula& f, std::string& out) {
    switch (f->kind) {
    case FormulaNode::Kind::Var:
        out += 'v';
        out += std::to_string(f->var);
        return;
    case FormulaNode::Kind::Not:
        out += '~';
        if (f->lhs->kind == FormulaNode::Kind::Var || f->lhs->kind == FormulaNode::Kind::Not) {
            render_formula_into(f->lhs, out);
        } else {
            out += '(';
            render_formula_into(f->lhs, out);
            out += ')';
        }
        return;
    case FormulaNode::Kind::And:
    case FormulaNode::Kind::Or: {
        const bool is_or = f->kind == FormulaNode::Kind::Or;
        auto wrap = [&](const Formula& g) {
            const bool need = is_or ? false
                                    : g->kind == FormulaNode::Kind::Or;
            if (need) out += '(';
            render_formula_into(g, out);
            if (need) out += ')';
        };
        wrap(f->lhs);
        out += is_or ? " | " : " & ";
        wrap(f->rhs);
        return;
    }
    }
}

} // namespace

Formula parse_formula(std::string_view text) {
    FormulaParser p{text};
    Formula f = p.or_expr();
    p.skip_ws();
    if (p.pos != text.size()) p.fail("trailing input after formula");
    return f;
}

std::string render_formula(const Formula& f) {
    std::string out;
    render_formula_into(f, out);
    return out;
}

namespace {

Circuit::NodeRef parse_node(std::string_view tok, const std::map<int, int>& gate_index) {
    if (tok.size() >= 3 && tok.substr(0, 2) == "in") {
        int idx = std::stoi(std::string(tok.substr(2)));
        if (idx < 1) throw SyntaxError("input indices start at 1");
        return {Circuit::NodeRef::Kind::Input, idx};
    }
    if (tok.size() >= 2 && tok[0] == 'g') {
        int id = std::stoi(std::string(tok.substr(1)));
        auto it = gate_index.find(id);
        if (it == gate_index.end())
            throw SyntaxError("reference to undeclared gate g" + std::to_string(id));
        return {Circuit::NodeRef::Kind::Gate, it->second};
    }
    throw SyntaxError("bad node '" + std::string(tok) + "'");
}

} // namespace

Circuit parse_circuit(std::string_view text) {
    // first pass: collect gate ids in declaration order
    std::istringstream in{std::string(text)};
    std::string line;
    std::map<int, int> gate_index;
    std::vector<std::string> lines;
    int n_gates = 0;
    while (std::getline(in, line)) {
        auto t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        lines.emplace_back(t);
        if (t[0] == 'g') {
            auto eq = t.find('=');
            if (eq == std::string_view::npos) throw SyntaxError("gate line without '='");
            int id = std::stoi(std::string(trim(t.substr(0, eq)).substr(1)));
            if (gate_index.count(id)) throw SyntaxError("gate g" + std::to_string(id) +
                                                        " declared twice");
            gate_index[id] = n_gates++;
        }
    }

    Circuit c;
    c.gates.resize(static_cast<std::size_t>(n_gates));
    bool have_output = false;
    int max_input = 0;
    auto track = [&](const Circuit::NodeRef& r) {
        if (r.kind == Circuit::NodeRef::Kind::Input) max_input = std::max(max_input, r.index);
        return r;
    };
    for (const auto& l : lines) {
        std::istringstream ls{l};
        std::string lhs, eq, op, a, b;
        ls >> lhs >> eq;
        if (eq != "=") throw SyntaxError("expected '=' in line: " + l);
        if (lhs == "out") {
            ls >> a;
            c.output = track(parse_node(a, gate_index));
            have_output = true;
            continue;
        }
        int id = std::stoi(lhs.substr(1));
        Circuit::Gate gate;
        ls >> op;
        if (op == "NOT") {
            ls >> a;
            gate.op = Circuit::Op::Not;
            gate.a = track(parse_node(a, gate_index));
        } else if (op == "OR" || op == "AND") {
            ls >> a >> b;
            gate.op = op == "OR" ? Circuit::Op::Or : Circuit::Op::And;
            gate.a = track(parse_node(a, gate_index));
            gate.b = track(parse_node(b, gate_index));
        } else {
            throw SyntaxError("unknown gate operation '" + op + "'");
        }
        c.gates[static_cast<std::size_t>(gate_index[id])] = gate;
    }
    if (!have_output) throw SyntaxError("circuit has no 'out = <node>' line");
    c.num_inputs = max_input;
    return c;
}

FamilyPrefix parse_family_prefix(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    std::vector<TruthTable> tables;
    std::string block;
    auto flush = [&]() {
        if (trim(block).empty()) return;
        tables.push_back(parse_truth_table(block));
        block.clear();
    };
    while (std::getline(in, line)) {
        auto t = trim(line);
        if (t.substr(0, 2) == "n=") flush();
        block += std::string(t);
        block += '\n';
    }
    flush();
    return make_family_prefix(std::move(tables));
}

std::string render_family_prefix(const FamilyPrefix& prefix) {
    std::string out;
    for (const auto& t : prefix.tables) out += render_truth_table(t);
    return out;
}

LiteralSet parse_literal_set(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string tok;
    Clause clause;
    while (in >> tok) {
        bool positive = true;
        std::string_view t = tok;
        if (!t.empty() && t[0] == '~') {
            positive = false;
            t.remove_prefix(1);
        }
        if (t.empty() || t[0] != 'v') throw SyntaxError("bad literal '" + tok + "'");
        clause.push_back(Literal{std::stoi(std::string(t.substr(1))), positive});
    }
    return normalize_literal_set(clause);
}

std::string render_literal_set(const LiteralSet& set) {
    std::string out;
    for (const auto& lit : set) {
        if (!out.empty()) out += ' ';
        if (!lit.positive) out += '~';
        out += 'v';
        out += std::to_string(lit.var);
    }
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open " + path + " for writing");
    out << content;
}

} // namespace spis
