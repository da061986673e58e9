#include "spis/satc.hpp"

#include <algorithm>
#include <unordered_map>

namespace spis {

namespace {

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw Error("arithmetic overflow");
    return r;
}

// Nonempty subsets of {1..m} with at most three elements.
std::uint64_t nsubsets3(std::uint64_t m) {
    std::uint64_t c1 = m;
    std::uint64_t c2 = m * (m - 1) / 2;
    std::uint64_t c3 = checked_mul(m >= 2 ? m * (m - 1) / 2 : 0, m >= 2 ? m - 2 : 0) / 3;
    return c1 + c2 + c3;
}

} // namespace

std::uint64_t literal_index(const Literal& lit) {
    if (lit.var < 1) throw Malformed("literal variable must be >= 1");
    return 2 * static_cast<std::uint64_t>(lit.var) - (lit.positive ? 1 : 0);
}

Literal literal_from_index(std::uint64_t idx) {
    if (idx < 1) throw Malformed("literal index must be >= 1");
    return Literal{static_cast<int>((idx + 1) / 2), idx % 2 == 1};
}

std::uint64_t ndisj(std::uint64_t k) {
    if (k == 0) return 0;
    return nsubsets3(2 * k);
}

LiteralSet alpha_unrank(std::uint64_t position) {
    if (position < 1) throw Malformed("enumeration positions start at 1");
    // block of sets whose maximum literal index is M
    std::uint64_t lo = 1, hi = 2;
    while (nsubsets3(hi) < position) {
        lo = hi;
        if (__builtin_mul_overflow(hi, std::uint64_t{2}, &hi))
            throw Error("arithmetic overflow");
    }
    while (lo < hi) { // least M with nsubsets3(M) >= position
        std::uint64_t mid = lo + (hi - lo) / 2;
        if (nsubsets3(mid) >= position) hi = mid; else lo = mid + 1;
    }
    const std::uint64_t M = lo;
    std::uint64_t offset = position - nsubsets3(M - 1); // 1-based within block
    if (offset == 1) return {literal_from_index(M)};
    offset -= 1;
    if (offset <= M - 1) // pairs {a, M}
        return {literal_from_index(offset), literal_from_index(M)};
    offset -= M - 1; // triples {a, b, M}, lexicographic on (a, b)
    std::uint64_t a = 1;
    while (offset > M - 1 - a) {
        offset -= M - 1 - a;
        ++a;
    }
    std::uint64_t b = a + offset;
    return {literal_from_index(a), literal_from_index(b), literal_from_index(M)};
}

std::uint64_t alpha_rank(const LiteralSet& set) {
    if (set.empty() || set.size() > 3) throw ClauseTooWide("literal sets have 1..3 elements");
    std::vector<std::uint64_t> idx;
    for (const auto& lit : set) idx.push_back(literal_index(lit));
    std::sort(idx.begin(), idx.end());
    if (std::adjacent_find(idx.begin(), idx.end()) != idx.end())
        throw Malformed("duplicate literal in set");
    const std::uint64_t M = idx.back();
    std::uint64_t rank = nsubsets3(M - 1) + 1;
    if (idx.size() == 1) return rank;
    if (idx.size() == 2) return rank + idx[0];
    const std::uint64_t a = idx[0], b = idx[1];
    std::uint64_t pair_rank = (a - 1) * (M - 1) - (a - 1) * a / 2 + (b - a);
    return rank + (M - 1) + pair_rank;
}

LiteralSet normalize_literal_set(const Clause& clause) {
    if (clause.empty()) throw EmptyClause("clause with no literals");
    LiteralSet set;
    for (const auto& lit : clause) set.push_back(lit);
    std::sort(set.begin(), set.end(), [](const Literal& x, const Literal& y) {
        return literal_index(x) < literal_index(y);
    });
    set.erase(std::unique(set.begin(), set.end()), set.end());
    if (set.size() > 3) throw ClauseTooWide("clause with more than three distinct literals");
    return set;
}

SatcInstance encode_cnf(const CnfFormula& cnf) {
    int max_k = 0;
    std::vector<std::uint64_t> ranks;
    for (const auto& clause : cnf.clauses) {
        LiteralSet set = normalize_literal_set(clause);
        for (const auto& lit : set) max_k = std::max(max_k, lit.var);
        ranks.push_back(alpha_rank(set));
    }
    SatcInstance bits(ndisj(static_cast<std::uint64_t>(max_k)), false);
    for (std::uint64_t r : ranks) bits[r - 1] = true;
    return bits;
}

// Every bit is a clause slot, also inside a partially covered enumeration
// block. Truncating to the last complete block (as one reading of the
// source has it) would break the padding identity
// eval(w) == eval(w ++ False) whenever appending completes a block and
// exposes previously dead bits, and with it the projectivity of the
// instance family, so the decoder treats the enumeration as total.
CnfFormula decode_vector(const SatcInstance& w) {
    CnfFormula cnf;
    for (std::uint64_t i = 1; i <= w.size(); ++i) {
        if (!w[i - 1]) continue;
        LiteralSet set = alpha_unrank(i);
        cnf.clauses.push_back(Clause(set.begin(), set.end()));
    }
    return cnf;
}

bool satc_eval(const SatcInstance& w, std::size_t instance_limit) {
    if (w.size() > instance_limit)
        throw InstanceTooLarge("instance of " + std::to_string(w.size()) + " bits, limit " +
                               std::to_string(instance_limit));
    return sat_solve(decode_vector(w)).has_value();
}

namespace {

// Plain recursive DPLL over a literal-int encoding (+v / -v).
struct Dpll {
    int num_vars;
    std::vector<std::vector<int>> clauses;
    std::vector<int8_t> value; // 1-based; -1 unknown

    bool satisfied(int lit) const {
        int8_t v = value[static_cast<std::size_t>(std::abs(lit))];
        return v != -1 && (v == 1) == (lit > 0);
    }
    bool falsified(int lit) const {
        int8_t v = value[static_cast<std::size_t>(std::abs(lit))];
        return v != -1 && (v == 1) != (lit > 0);
    }

    bool propagate(std::vector<int>& trail) {
        for (;;) {
            bool changed = false;
            for (const auto& cl : clauses) {
                int unassigned = 0;
                int last = 0;
                bool sat = false;
                for (int lit : cl) {
                    if (satisfied(lit)) {
                        sat = true;
                        break;
                    }
                    if (!falsified(lit)) {
                        ++unassigned;
                        last = lit;
                    }
                }
                if (sat) continue;
                if (unassigned == 0) return false; // conflict
                if (unassigned == 1) {
                    value[static_cast<std::size_t>(std::abs(last))] = last > 0 ? 1 : 0;
                    trail.push_back(std::abs(last));
                    changed = true;
                }
            }
            if (!changed) return true;
        }
    }

    bool solve() {
        std::vector<int> trail;
        if (!propagate(trail)) {
            for (int v : trail) value[static_cast<std::size_t>(v)] = -1;
            return false;
        }
        int branch = 0;
        for (const auto& cl : clauses) {
            bool sat = false;
            for (int lit : cl)
                if (satisfied(lit)) {
                    sat = true;
                    break;
                }
            if (sat) continue;
            for (int lit : cl)
                if (!falsified(lit)) {
                    branch = std::abs(lit);
                    break;
                }
            if (branch) break;
        }
        if (branch == 0) return true; // every clause satisfied
        for (int8_t b : {int8_t{1}, int8_t{0}}) {
            value[static_cast<std::size_t>(branch)] = b;
            std::vector<int> sub;
            if (solve()) return true;
            value[static_cast<std::size_t>(branch)] = -1;
        }
        for (int v : trail) value[static_cast<std::size_t>(v)] = -1;
        return false;
    }
};

} // namespace

std::optional<std::vector<bool>> sat_solve(const CnfFormula& cnf) {
    Dpll dpll;
    dpll.num_vars = max_var(cnf);
    dpll.value.assign(static_cast<std::size_t>(dpll.num_vars) + 1, -1);
    for (const auto& clause : cnf.clauses) {
        if (clause.empty()) return std::nullopt;
        std::vector<int> cl;
        for (const auto& lit : clause) cl.push_back(lit.positive ? lit.var : -lit.var);
        dpll.clauses.push_back(std::move(cl));
    }
    if (!dpll.solve()) return std::nullopt;
    std::vector<bool> assignment(static_cast<std::size_t>(dpll.num_vars), false);
    for (int v = 1; v <= dpll.num_vars; ++v)
        assignment[static_cast<std::size_t>(v) - 1] = dpll.value[static_cast<std::size_t>(v)] == 1;
    return assignment;
}

namespace {

struct Tseitin {
    CnfFormula out;
    int next_var;
    std::unordered_map<const FormulaNode*, int> memo; // shared nodes encode once

    // Returns the literal (as a variable index, always positive polarity
    // via fresh gate variables) standing for the subformula.
    int encode(const Formula& f) {
        if (auto it = memo.find(f.get()); it != memo.end()) return it->second;
        int g = 0;
        switch (f->kind) {
        case FormulaNode::Kind::Var:
            g = f->var;
            break;
        case FormulaNode::Kind::Not: {
            int a = encode(f->lhs);
            g = next_var++;
            out.clauses.push_back({Literal{g, false}, Literal{a, false}}); // g -> ~a
            out.clauses.push_back({Literal{g, true}, Literal{a, true}});   // ~g -> a
            break;
        }
        case FormulaNode::Kind::Or: {
            int a = encode(f->lhs);
            int b = encode(f->rhs);
            g = next_var++;
            out.clauses.push_back({Literal{g, false}, Literal{a, true}, Literal{b, true}});
            out.clauses.push_back({Literal{g, true}, Literal{a, false}});
            out.clauses.push_back({Literal{g, true}, Literal{b, false}});
            break;
        }
        case FormulaNode::Kind::And: {
            int a = encode(f->lhs);
            int b = encode(f->rhs);
            g = next_var++;
            out.clauses.push_back({Literal{g, false}, Literal{a, true}});
            out.clauses.push_back({Literal{g, false}, Literal{b, true}});
            out.clauses.push_back({Literal{g, true}, Literal{a, false}, Literal{b, false}});
            break;
        }
        }
        memo.emplace(f.get(), g);
        return g;
    }
};

} // namespace

CnfFormula to_3cnf(const Formula& f) {
    Tseitin ts;
    ts.next_var = max_var(f) + 1;
    int root = ts.encode(f);
    ts.out.clauses.push_back({Literal{root, true}});
    return ts.out;
}

} // namespace spis
