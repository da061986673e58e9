#include "spis/formula.hpp"

#include <algorithm>
#include <unordered_map>

namespace spis {

Formula f_var(int index) {
    if (index < 1) throw UnboundVariable("variable index must be >= 1");
    return std::make_shared<FormulaNode>(FormulaNode{FormulaNode::Kind::Var, index, {}, {}});
}

Formula f_not(Formula a) {
    return std::make_shared<FormulaNode>(
        FormulaNode{FormulaNode::Kind::Not, 0, std::move(a), {}});
}

Formula f_or(Formula a, Formula b) {
    return std::make_shared<FormulaNode>(
        FormulaNode{FormulaNode::Kind::Or, 0, std::move(a), std::move(b)});
}

Formula f_and(Formula a, Formula b) {
    return std::make_shared<FormulaNode>(
        FormulaNode{FormulaNode::Kind::And, 0, std::move(a), std::move(b)});
}

bool eval_formula(const Formula& f, const std::vector<bool>& assignment) {
    switch (f->kind) {
    case FormulaNode::Kind::Var:
        if (static_cast<std::size_t>(f->var) > assignment.size())
            throw UnboundVariable("assignment has no value for v" + std::to_string(f->var));
        return assignment[static_cast<std::size_t>(f->var) - 1];
    case FormulaNode::Kind::Not: return !eval_formula(f->lhs, assignment);
    case FormulaNode::Kind::Or:  return eval_formula(f->lhs, assignment) ||
                                        eval_formula(f->rhs, assignment);
    case FormulaNode::Kind::And: return eval_formula(f->lhs, assignment) &&
                                        eval_formula(f->rhs, assignment);
    }
    return false;
}

int max_var(const Formula& f) {
    switch (f->kind) {
    case FormulaNode::Kind::Var: return f->var;
    case FormulaNode::Kind::Not: return max_var(f->lhs);
    default: return std::max(max_var(f->lhs), max_var(f->rhs));
    }
}

std::size_t formula_size(const Formula& f) {
    switch (f->kind) {
    case FormulaNode::Kind::Var: return 1;
    case FormulaNode::Kind::Not: return 1 + formula_size(f->lhs);
    default: return 1 + formula_size(f->lhs) + formula_size(f->rhs);
    }
}

int max_var(const CnfFormula& cnf) {
    int m = 0;
    for (const auto& cl : cnf.clauses)
        for (const auto& lit : cl) m = std::max(m, lit.var);
    return m;
}

bool eval_cnf(const CnfFormula& cnf, const std::vector<bool>& assignment) {
    for (const auto& cl : cnf.clauses) {
        bool sat = false;
        for (const auto& lit : cl) {
            if (static_cast<std::size_t>(lit.var) > assignment.size())
                throw UnboundVariable("assignment has no value for v" + std::to_string(lit.var));
            if (assignment[static_cast<std::size_t>(lit.var) - 1] == lit.positive) {
                sat = true;
                break;
            }
        }
        if (!sat) return false;
    }
    return true;
}

std::vector<int> topo_order(const Circuit& c) {
    const int m = static_cast<int>(c.gates.size());
    std::vector<int> state(static_cast<std::size_t>(m), 0); // 0 new, 1 visiting, 2 done
    std::vector<int> order;
    order.reserve(static_cast<std::size_t>(m));

    // Iterative DFS; a gate reached while still "visiting" closes a cycle.
    std::vector<int> stack;
    for (int root = 0; root < m; ++root) {
        if (state[static_cast<std::size_t>(root)]) continue;
        stack.push_back(root);
        while (!stack.empty()) {
            int g = stack.back();
            auto& st = state[static_cast<std::size_t>(g)];
            if (st == 2) {
                stack.pop_back();
                continue;
            }
            if (st == 1) {
                st = 2;
                order.push_back(g);
                stack.pop_back();
                continue;
            }
            st = 1;
            const auto& gate = c.gates[static_cast<std::size_t>(g)];
            auto push = [&](const Circuit::NodeRef& r) {
                if (r.kind != Circuit::NodeRef::Kind::Gate) return;
                if (r.index < 0 || r.index >= m)
                    throw CyclicCircuit("gate reference out of range");
                int s = state[static_cast<std::size_t>(r.index)];
                if (s == 1) throw CyclicCircuit("circuit contains a cycle");
                if (s == 0) stack.push_back(r.index);
            };
            push(gate.a);
            if (gate.op != Circuit::Op::Not) push(gate.b);
        }
    }
    return order;
}

bool eval_circuit(const Circuit& c, const std::vector<bool>& assignment) {
    std::vector<int> order = topo_order(c);
    std::vector<bool> value(c.gates.size(), false);
    auto node_value = [&](const Circuit::NodeRef& r) {
        if (r.kind == Circuit::NodeRef::Kind::Input) {
            if (static_cast<std::size_t>(r.index) > assignment.size())
                throw UnboundVariable("assignment has no value for in" + std::to_string(r.index));
            return static_cast<bool>(assignment[static_cast<std::size_t>(r.index) - 1]);
        }
        return static_cast<bool>(value[static_cast<std::size_t>(r.index)]);
    };
    for (int g : order) {
        const auto& gate = c.gates[static_cast<std::size_t>(g)];
        bool v = false;
        switch (gate.op) {
        case Circuit::Op::Not: v = !node_value(gate.a); break;
        case Circuit::Op::Or:  v = node_value(gate.a) || node_value(gate.b); break;
        case Circuit::Op::And: v = node_value(gate.a) && node_value(gate.b); break;
        }
        value[static_cast<std::size_t>(g)] = v;
    }
    return node_value(c.output);
}

} // namespace spis
