#include "spis/isa.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace spis {

bool is_legal_basic(const BasicInstruction& b) {
    switch (b.focus.kind) {
    case Focus::Kind::Input: return b.method == Method::Get && b.focus.index >= 1;
    case Focus::Kind::Out:   return b.method != Method::Get;
    case Focus::Kind::Aux:   return b.focus.index >= 1;
    }
    return false;
}

InstructionSequence::InstructionSequence(std::vector<PrimitiveInstruction> is)
    : instrs(std::move(is)) {
    if (instrs.empty())
        throw SyntaxError("instruction sequence must be non-empty");
    for (const auto& u : instrs)
        if (u.has_basic() && !is_legal_basic(u.basic))
            throw IllegalInstruction("basic instruction outside the register instruction set: " +
                                     render(u));
}

namespace {

struct Cursor {
    std::string_view text;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    bool done() {
        skip_ws();
        return pos == text.size();
    }
    char peek() const { return text[pos]; }
    bool eat(char c) {
        if (pos < text.size() && text[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    bool eat_word(std::string_view w) {
        if (text.substr(pos, w.size()) == w) {
            pos += w.size();
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(const std::string& msg) const {
        throw SyntaxError(msg + " at offset " + std::to_string(pos));
    }

    std::uint64_t number() {
        if (pos == text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
            fail("expected a number");
        std::uint64_t v = 0;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            v = v * 10 + static_cast<std::uint64_t>(text[pos] - '0');
            if (v > 100000000ull) fail("number out of range");
            ++pos;
        }
        return v;
    }

    Focus focus() {
        if (eat_word("in:")) {
            auto i = number();
            if (i < 1) fail("register index must be >= 1");
            return Focus::input(static_cast<int>(i));
        }
        if (eat_word("aux:")) {
            auto i = number();
            if (i < 1) fail("register index must be >= 1");
            return Focus::aux(static_cast<int>(i));
        }
        if (eat_word("out")) return Focus::out();
        fail("expected a register name (in:<i>, aux:<i> or out)");
    }

    Method method() {
        if (eat_word("set:T")) return Method::SetTrue;
        if (eat_word("set:F")) return Method::SetFalse;
        if (eat_word("get")) return Method::Get;
        fail("expected a method (set:T, set:F or get)");
    }

    BasicInstruction basic() {
        Focus f = focus();
        if (!eat('.')) fail("expected '.' between register and method");
        Method m = method();
        BasicInstruction b{f, m};
        if (!is_legal_basic(b))
            throw IllegalInstruction("basic instruction outside the register instruction set: " +
                                     render(PrimitiveInstruction::plain(b)));
        return b;
    }

    PrimitiveInstruction instruction() {
        skip_ws();
        if (pos == text.size()) fail("expected an instruction");
        if (eat('!')) return PrimitiveInstruction::halt();
        if (eat('#')) return PrimitiveInstruction::jump_to(static_cast<std::uint32_t>(number()));
        if (eat('+')) return PrimitiveInstruction::pos_test(basic());
        if (eat('-')) return PrimitiveInstruction::neg_test(basic());
        return PrimitiveInstruction::plain(basic());
    }
};

} // namespace

InstructionSequence parse(std::string_view text) {
    Cursor c{text};
    std::vector<PrimitiveInstruction> instrs;
    if (c.done()) throw SyntaxError("empty instruction sequence");
    for (;;) {
        instrs.push_back(c.instruction());
        c.skip_ws();
        if (c.done()) break;
        if (!c.eat(';')) c.fail("expected ';' between instructions");
    }
    return InstructionSequence(std::move(instrs));
}

std::string render(const PrimitiveInstruction& instr) {
    auto basic_text = [](const BasicInstruction& b) {
        std::string s;
        switch (b.focus.kind) {
        case Focus::Kind::Input: s = "in:" + std::to_string(b.focus.index); break;
        case Focus::Kind::Aux:   s = "aux:" + std::to_string(b.focus.index); break;
        case Focus::Kind::Out:   s = "out"; break;
        }
        s += '.';
        switch (b.method) {
        case Method::SetTrue:  s += "set:T"; break;
        case Method::SetFalse: s += "set:F"; break;
        case Method::Get:      s += "get"; break;
        }
        return s;
    };
    switch (instr.kind) {
    case PrimitiveInstruction::Kind::Plain:   return basic_text(instr.basic);
    case PrimitiveInstruction::Kind::PosTest: return "+" + basic_text(instr.basic);
    case PrimitiveInstruction::Kind::NegTest: return "-" + basic_text(instr.basic);
    case PrimitiveInstruction::Kind::Jump:    return "#" + std::to_string(instr.jump);
    case PrimitiveInstruction::Kind::Halt:    return "!";
    }
    return "!";
}

std::string render(const InstructionSequence& iseq) {
    std::string out;
    for (std::size_t i = 0; i < iseq.instrs.size(); ++i) {
        if (i) out += " ; ";
        out += render(iseq.instrs[i]);
    }
    return out;
}

std::size_t psize(const InstructionSequence& iseq) {
    return iseq.instrs.size();
}

Classification classify(const InstructionSequence& iseq) {
    Classification c;
    for (const auto& u : iseq.instrs) {
        if (u.has_basic()) {
            if (u.basic.focus.kind == Focus::Kind::Input)
                c.in_arity = std::max(c.in_arity, u.basic.focus.index);
            else if (u.basic.focus.kind == Focus::Kind::Aux)
                c.max_aux = std::max(c.max_aux, u.basic.focus.index);
        } else if (u.kind == PrimitiveInstruction::Kind::Jump) {
            c.max_jump = std::max(c.max_jump, static_cast<int>(u.jump));
        }
    }
    return c;
}

InstructionSequence concat(const InstructionSequence& a, const InstructionSequence& b) {
    std::vector<PrimitiveInstruction> instrs = a.instrs;
    instrs.insert(instrs.end(), b.instrs.begin(), b.instrs.end());
    return InstructionSequence(std::move(instrs));
}

} // namespace spis
