#include "spis/synthesis.hpp"

#include <algorithm>

namespace spis {

namespace {

using PI = PrimitiveInstruction;

PI out_set(bool v) {
    return PI::plain({Focus::out(), v ? Method::SetTrue : Method::SetFalse});
}

void emit_table(const TruthTable& f, std::vector<PI>& out) {
    if (f.arity == 0) {
        // base cases straight from the recursion
        if (f.outputs[0]) {
            out.push_back(PI::neg_test({Focus::out(), Method::SetTrue}));
            out.push_back(PI::jump_to(2));
            out.push_back(PI::halt());
        } else {
            out.push_back(PI::pos_test({Focus::out(), Method::SetFalse}));
            out.push_back(PI::jump_to(2));
            out.push_back(PI::halt());
        }
        return;
    }
    const int n = f.arity - 1;
    TruthTable ft = TruthTable::of_arity(n);
    TruthTable ff = TruthTable::of_arity(n);
    for (std::size_t i = 0; i < ft.outputs.size(); ++i) {
        ft.outputs[i] = f.outputs[2 * i + 1]; // b_{n+1} = T is the fastest bit
        ff.outputs[i] = f.outputs[2 * i];
    }
    // Over a 3-instruction leaf the #2 skip chain is exact; over a deeper
    // block it is not (it would land inside the block), so the dispatch
    // jumps across the whole true branch instead.
    const std::size_t t_len = 5 * (std::size_t{1} << n) - 2;
    out.push_back(PI::neg_test({Focus::input(f.arity), Method::Get}));
    out.push_back(PI::jump_to(f.arity == 1 ? 2 : static_cast<std::uint32_t>(t_len + 1)));
    emit_table(ft, out);
    emit_table(ff, out);
}

} // namespace

InstructionSequence inseq_from_table(const TruthTable& f, int arity_limit) {
    if (f.arity < 0 || f.arity > arity_limit)
        throw ArityTooLarge("table arity " + std::to_string(f.arity) + " above limit " +
                            std::to_string(arity_limit));
    std::vector<PI> out;
    out.reserve(5 * (std::size_t{1} << f.arity) - 2);
    emit_table(f, out);
    return InstructionSequence(std::move(out));
}

InstructionSequence inseqcnf(const CnfFormula& cnf) {
    std::vector<PI> out;
    for (const auto& clause : cnf.clauses) {
        if (clause.empty()) throw EmptyClause("CNF clause with no literals");
        for (const auto& lit : clause) {
            BasicInstruction read{Focus::input(lit.var), Method::Get};
            out.push_back(lit.positive ? PI::pos_test(read) : PI::neg_test(read));
            out.push_back(PI::jump_to(2));
        }
        out.push_back(PI::pos_test({Focus::out(), Method::SetFalse}));
        out.push_back(PI::jump_to(2));
        out.push_back(PI::halt());
    }
    out.push_back(PI::pos_test({Focus::out(), Method::SetTrue}));
    out.push_back(PI::halt());
    return InstructionSequence(std::move(out));
}

namespace {

// Body blocks exit at end+1 when the subformula is true and end+2 when
// false; the trailing pair turns that into the output register.
void emit_formula(const Formula& f, std::vector<PI>& out) {
    switch (f->kind) {
    case FormulaNode::Kind::Var:
        out.push_back(PI::pos_test({Focus::input(f->var), Method::Get}));
        return;
    case FormulaNode::Kind::Not:
        emit_formula(f->lhs, out);
        out.push_back(PI::jump_to(2));
        return;
    case FormulaNode::Kind::Or: {
        emit_formula(f->lhs, out);
        std::vector<PI> rhs;
        emit_formula(f->rhs, rhs);
        out.push_back(PI::jump_to(static_cast<std::uint32_t>(rhs.size() + 1)));
        out.insert(out.end(), rhs.begin(), rhs.end());
        return;
    }
    case FormulaNode::Kind::And: {
        emit_formula(f->lhs, out);
        std::vector<PI> rhs;
        emit_formula(f->rhs, rhs);
        out.push_back(PI::jump_to(2));
        out.push_back(PI::jump_to(static_cast<std::uint32_t>(rhs.size() + 2)));
        out.insert(out.end(), rhs.begin(), rhs.end());
        return;
    }
    }
}

} // namespace

InstructionSequence inseqf(const Formula& f) {
    std::vector<PI> out;
    emit_formula(f, out);
    out.push_back(PI::pos_test({Focus::out(), Method::SetTrue}));
    out.push_back(PI::halt());
    return InstructionSequence(std::move(out));
}

InstructionSequence inseqc(const Circuit& c) {
    std::vector<int> order = topo_order(c);
    std::vector<int> aux_of(c.gates.size(), 0); // gate -> 1-based aux index
    for (std::size_t p = 0; p < order.size(); ++p)
        aux_of[static_cast<std::size_t>(order[p])] = static_cast<int>(p) + 1;

    auto read = [&](const Circuit::NodeRef& r) {
        if (r.kind == Circuit::NodeRef::Kind::Input)
            return PI::pos_test({Focus::input(r.index), Method::Get});
        return PI::pos_test({Focus::aux(aux_of[static_cast<std::size_t>(r.index)]), Method::Get});
    };

    std::vector<PI> out;
    for (std::size_t p = 0; p < order.size(); ++p) {
        const auto& gate = c.gates[static_cast<std::size_t>(order[p])];
        PI set = PI::pos_test({Focus::aux(static_cast<int>(p) + 1), Method::SetTrue});
        switch (gate.op) {
        case Circuit::Op::Not:
            out.push_back(read(gate.a));
            out.push_back(PI::jump_to(2));
            out.push_back(set);
            break;
        case Circuit::Op::Or:
            out.push_back(read(gate.a));
            out.push_back(PI::jump_to(2));
            out.push_back(read(gate.b));
            out.push_back(set);
            break;
        case Circuit::Op::And:
            out.push_back(read(gate.a));
            out.push_back(PI::jump_to(2));
            out.push_back(PI::jump_to(3));
            out.push_back(read(gate.b));
            out.push_back(set);
            break;
        }
    }
    out.push_back(read(c.output));
    out.push_back(PI::pos_test({Focus::out(), Method::SetTrue}));
    out.push_back(PI::halt());
    return InstructionSequence(std::move(out));
}

InstructionSequence rename_focus(const InstructionSequence& x, const Focus& from,
                                 const Focus& to) {
    std::vector<PI> instrs = x.instrs;
    for (auto& u : instrs)
        if (u.has_basic() && u.basic.focus == from) u.basic.focus = to;
    return InstructionSequence(std::move(instrs));
}

InstructionSequence eliminate_set_false(const InstructionSequence& x) {
    const int fresh = classify(x).max_aux + 1;
    const Focus result = Focus::aux(fresh);
    std::vector<PI> u = rename_focus(x, Focus::out(), result).instrs;

    const PI plain_out_set_t = out_set(true);
    for (;;) {
        if (u[0].kind == PI::Kind::Halt) break;
        std::size_t j = 0; // 1-based position of the halt to expand
        for (std::size_t pos = 2; pos <= u.size(); ++pos) {
            if (u[pos - 1].kind == PI::Kind::Halt && !(u[pos - 2] == plain_out_set_t)) {
                j = pos;
                break;
            }
        }
        if (j == 0) break;
        // grow jumps that span across position j before splicing
        for (std::size_t i = 1; i < j; ++i) {
            auto& instr = u[i - 1];
            if (instr.kind == PI::Kind::Jump && i < j && j < i + instr.jump) instr.jump += 2;
        }
        std::vector<PI> triple = {PI::pos_test({result, Method::Get}), plain_out_set_t,
                                  PI::halt()};
        u.erase(u.begin() + static_cast<std::ptrdiff_t>(j - 1));
        u.insert(u.begin() + static_cast<std::ptrdiff_t>(j - 1), triple.begin(), triple.end());
    }
    return InstructionSequence(std::move(u));
}

InstructionSequence retarget_inputs(const InstructionSequence& x,
                                    const std::map<int, Focus>& map) {
    for (const auto& [idx, target] : map) {
        (void)idx;
        if (target.kind == Focus::Kind::Out)
            throw IllegalTarget("the output register cannot be read");
    }
    std::vector<PI> instrs = x.instrs;
    for (auto& u : instrs) {
        if (!u.has_basic() || u.basic.focus.kind != Focus::Kind::Input) continue;
        auto it = map.find(u.basic.focus.index);
        if (it == map.end())
            throw UnmappedInput("no mapping for in:" + std::to_string(u.basic.focus.index));
        u.basic.focus = it->second;
    }
    return InstructionSequence(std::move(instrs));
}

InstructionSequence shift_aux(const InstructionSequence& x, int offset) {
    std::vector<PI> instrs = x.instrs;
    for (auto& u : instrs)
        if (u.has_basic() && u.basic.focus.kind == Focus::Kind::Aux)
            u.basic.focus.index += offset;
    return InstructionSequence(std::move(instrs));
}

InstructionSequence halts_to_exits(const InstructionSequence& x) {
    std::vector<PI> instrs = x.instrs;
    const std::size_t k = instrs.size();
    for (std::size_t pos = 1; pos <= k; ++pos)
        if (instrs[pos - 1].kind == PI::Kind::Halt)
            instrs[pos - 1] = PI::jump_to(static_cast<std::uint32_t>(k + 1 - pos));
    return InstructionSequence(std::move(instrs));
}

} // namespace spis
