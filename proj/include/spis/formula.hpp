#pragma once

#include <memory>
#include <string>
#include <vector>

#include "spis/errors.hpp"

namespace spis {

// Propositional formulas over v1, v2, ... with connectives ~, |, &.
struct FormulaNode;
using Formula = std::shared_ptr<const FormulaNode>;

struct FormulaNode {
    enum class Kind { Var, Not, Or, And };

    Kind kind;
    int var = 0;    // Var
    Formula lhs;    // Not operand / binary left
    Formula rhs;    // binary right
};

Formula f_var(int index);
Formula f_not(Formula a);
Formula f_or(Formula a, Formula b);
Formula f_and(Formula a, Formula b);

bool eval_formula(const Formula& f, const std::vector<bool>& assignment);
int max_var(const Formula& f);
std::size_t formula_size(const Formula& f); // node count

struct Literal {
    int var = 1;          // >= 1
    bool positive = true;

    Literal negated() const { return {var, !positive}; }
    friend auto operator<=>(const Literal&, const Literal&) = default;
};

using Clause = std::vector<Literal>;

struct CnfFormula {
    std::vector<Clause> clauses;

    friend bool operator==(const CnfFormula&, const CnfFormula&) = default;
};

int max_var(const CnfFormula& cnf);
bool eval_cnf(const CnfFormula& cnf, const std::vector<bool>& assignment);

// Single-output combinational circuit. Gates may reference inputs or other
// gates in any declaration order as long as the result is acyclic.
struct Circuit {
    enum class Op { Not, Or, And };
    struct NodeRef {
        enum class Kind { Input, Gate };
        Kind kind = Kind::Input;
        int index = 0; // 1-based input index / 0-based gate index
        friend bool operator==(const NodeRef&, const NodeRef&) = default;
    };
    struct Gate {
        Op op = Op::Not;
        NodeRef a;
        NodeRef b; // unused for Not
    };

    int num_inputs = 0;
    std::vector<Gate> gates;
    NodeRef output;
};

// Gate indices in evaluation order; throws CyclicCircuit.
std::vector<int> topo_order(const Circuit& c);
bool eval_circuit(const Circuit& c, const std::vector<bool>& assignment);

} // namespace spis
