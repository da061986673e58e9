#include "spis/reduction.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace spis {

namespace {

using PI = PrimitiveInstruction;

bool is_out_set(const PI& u, Method m) {
    return u.has_basic() && u.basic.focus.kind == Focus::Kind::Out && u.basic.method == m;
}

bool is_test(const PI& u) {
    return u.kind == PI::Kind::PosTest || u.kind == PI::Kind::NegTest;
}

std::vector<std::size_t> out_set_true_positions(const InstructionSequence& x) {
    std::vector<std::size_t> positions;
    for (std::size_t pos = 1; pos <= x.size(); ++pos)
        if (is_out_set(x.at(pos), Method::SetTrue)) positions.push_back(pos);
    return positions;
}

} // namespace

InstructionSequence normalize_for_reduction(const InstructionSequence& x) {
    for (const auto& u : x.instrs)
        if (is_out_set(u, Method::SetFalse))
            throw HasSetFalse("sequence writes False to the output register; "
                              "run eliminate_set_false first");
    std::vector<PI> u = x.instrs;

    // keep only the last out.set:T, earlier ones jump to it
    auto targets = out_set_true_positions(x);
    if (targets.size() > 1) {
        const std::size_t last = targets.back();
        for (std::size_t i = 0; i + 1 < targets.size(); ++i)
            u[targets[i] - 1] = PI::jump_to(static_cast<std::uint32_t>(last - targets[i]));
    }

    // jumps without an l-th next instruction mean inaction; say so directly
    for (std::size_t pos = 1; pos <= u.size(); ++pos) {
        auto& instr = u[pos - 1];
        if (instr.kind == PI::Kind::Jump && instr.jump != 0 && pos + instr.jump > u.size())
            instr = PI::jump_to(0);
    }

    // tests may not occupy the last two positions
    while (u.size() >= 1 && (is_test(u[u.size() - 1]) ||
                             (u.size() >= 2 && is_test(u[u.size() - 2]))))
        u.push_back(PI::jump_to(0));

    return InstructionSequence(std::move(u));
}

bool is_normalized_for_reduction(const InstructionSequence& x) {
    const std::size_t k = x.size();
    std::size_t targets = 0;
    for (std::size_t pos = 1; pos <= k; ++pos) {
        const auto& u = x.at(pos);
        if (is_out_set(u, Method::SetFalse)) return false;
        if (is_out_set(u, Method::SetTrue)) ++targets;
        if (u.kind == PI::Kind::Jump && u.jump != 0 && pos + u.jump > k) return false;
        if (is_test(u) && pos + 2 > k) return false;
    }
    return targets <= 1;
}

namespace {

// Formula building with shared nodes so the 3CNF stage encodes each
// distinct subterm once. TRUE/FALSE come up for the set-method replies and
// are folded away instead of being represented.
struct FormulaBuilder {
    std::vector<Formula> vars;   // index 1-based
    std::vector<Formula> negs;

    explicit FormulaBuilder(int nvars)
        : vars(static_cast<std::size_t>(nvars) + 1), negs(static_cast<std::size_t>(nvars) + 1) {
        for (int i = 1; i <= nvars; ++i) {
            vars[static_cast<std::size_t>(i)] = f_var(i);
            negs[static_cast<std::size_t>(i)] = f_not(vars[static_cast<std::size_t>(i)]);
        }
    }
    Formula var(int i) const { return vars[static_cast<std::size_t>(i)]; }
    Formula nvar(int i) const { return negs[static_cast<std::size_t>(i)]; }

    static Formula conj(const std::vector<Formula>& fs) {
        Formula acc;
        for (const auto& f : fs) acc = acc ? f_and(acc, f) : f;
        return acc;
    }
    static Formula disj(const std::vector<Formula>& fs) {
        Formula acc;
        for (const auto& f : fs) acc = acc ? f_or(acc, f) : f;
        return acc;
    }
};

// Reply of a basic instruction as a formula over register and position
// variables; nullopt arm means the constant.
struct ReplyFormula {
    bool constant = false; // when true, `value` is the reply
    bool value = false;
    Formula when_true;  // valid when !constant
    Formula when_false;
};

struct ReachabilityBuilder {
    const InstructionSequence& x;
    const std::vector<bool>& fixed;
    int n, m, k;
    std::size_t l;
    FormulaBuilder fb;

    ReachabilityBuilder(const InstructionSequence& seq, const std::vector<bool>& fx,
                        int certs, std::size_t target)
        : x(seq), fixed(fx), n(static_cast<int>(fx.size())), m(certs),
          k(static_cast<int>(seq.size())), l(target), fb(n + m + k) {}

    int vpos(std::size_t j) const { return n + m + static_cast<int>(j); }

    // positions in [1, j-1] writing b into aux register i
    std::vector<std::size_t> writers(int aux, bool b, std::size_t j) const {
        std::vector<std::size_t> out;
        const Method method = b ? Method::SetTrue : Method::SetFalse;
        for (std::size_t p = 1; p < j; ++p) {
            const auto& u = x.at(p);
            if (u.has_basic() && u.basic.focus == Focus::aux(aux) && u.basic.method == method)
                out.push_back(p);
        }
        return out;
    }

    // "aux register i reads b at position j": some b-writer executed with no
    // opposite writer after it; reading False also holds when no True-writer
    // ever executed (registers start False).
    Formula aux_reads(int aux, bool b, std::size_t j) {
        std::vector<Formula> arms;
        for (std::size_t w : writers(aux, b, j)) {
            std::vector<Formula> terms{fb.var(vpos(w))};
            for (std::size_t q : writers(aux, !b, j))
                if (q > w) terms.push_back(fb.nvar(vpos(q)));
            arms.push_back(FormulaBuilder::conj(terms));
        }
        if (!b) {
            auto true_writers = writers(aux, true, j);
            if (true_writers.empty()) return nullptr; // constant true, caller folds
            std::vector<Formula> never;
            for (std::size_t q : true_writers) never.push_back(fb.nvar(vpos(q)));
            arms.push_back(FormulaBuilder::conj(never));
        }
        return arms.empty() ? nullptr : FormulaBuilder::disj(arms);
    }

    std::map<std::size_t, ReplyFormula> reply_memo;

    ReplyFormula reply_at(std::size_t j) {
        if (auto it = reply_memo.find(j); it != reply_memo.end()) return it->second;
        ReplyFormula r = reply(x.at(j).basic, j);
        reply_memo.emplace(j, r);
        return r;
    }

    ReplyFormula reply(const BasicInstruction& b, std::size_t j) {
        ReplyFormula r;
        switch (b.method) {
        case Method::SetTrue:
            r.constant = true;
            r.value = true;
            return r;
        case Method::SetFalse:
            r.constant = true;
            r.value = false;
            return r;
        case Method::Get: break;
        }
        if (b.focus.kind == Focus::Kind::Input) {
            r.when_true = fb.var(b.focus.index);
            r.when_false = fb.nvar(b.focus.index);
            return r;
        }
        // aux register
        Formula t = aux_reads(b.focus.index, true, j);
        Formula f = aux_reads(b.focus.index, false, j);
        if (!t) { // never written true: get is constantly false
            r.constant = true;
            r.value = false;
            return r;
        }
        r.when_true = t;
        r.when_false = f ? f : nullptr; // f == nullptr cannot happen when t exists
        return r;
    }

    // guard for "position j executed and its reply is v"; nullptr = just v_j,
    // impossible edges return the monostate `none`.
    struct Guard {
        bool possible = true;
        Formula extra; // may be null (no extra condition)
    };

    Guard branch_guard(std::size_t j, bool reply_true_branch) {
        Guard g;
        ReplyFormula r = reply_at(j);
        if (r.constant) {
            g.possible = (r.value == reply_true_branch);
            return g;
        }
        g.extra = reply_true_branch ? r.when_true : r.when_false;
        return g;
    }

    // does the test at j proceed (+1) on this branch?
    static bool proceeds(const PI& u, bool reply_true_branch) {
        return (u.kind == PI::Kind::PosTest) == reply_true_branch;
    }

    Formula build() {
        std::vector<Formula> conjuncts;
        for (int i = 1; i <= n; ++i)
            conjuncts.push_back(fixed[static_cast<std::size_t>(i) - 1] ? fb.var(i) : fb.nvar(i));
        conjuncts.push_back(fb.var(vpos(1)));
        if (l != 1) conjuncts.push_back(fb.var(vpos(l)));

        // edge guards, shared between step conjuncts and support disjuncts
        // edges[p] lists (formula for "some executed predecessor hands
        // control to p")
        std::vector<std::vector<Formula>> edges(l + 1);
        auto add_edge = [&](std::size_t to, Formula guarded) {
            if (to <= l) edges[to].push_back(std::move(guarded));
        };

        for (std::size_t j = 1; j < l; ++j) {
            const auto& u = x.at(j);
            switch (u.kind) {
            case PI::Kind::Halt:
                break; // execution stops; nothing reached from here
            case PI::Kind::Plain: {
                // v_j -> v_{j+1}
                conjuncts.push_back(f_or(fb.nvar(vpos(j)), fb.var(vpos(j + 1))));
                add_edge(j + 1, fb.var(vpos(j)));
                break;
            }
            case PI::Kind::PosTest:
            case PI::Kind::NegTest: {
                for (bool reply_branch : {true, false}) {
                    Guard g = branch_guard(j, reply_branch);
                    if (!g.possible) continue;
                    const bool step1 = proceeds(u, reply_branch);
                    const std::size_t dest = j + (step1 ? 1 : 2);
                    // v_j & guard -> (skipped position off, destination on);
                    // the guarded term doubles as the support edge into dest
                    Formula ante = g.extra ? f_and(fb.var(vpos(j)), g.extra) : fb.var(vpos(j));
                    std::vector<Formula> post;
                    if (!step1) post.push_back(fb.nvar(vpos(j + 1)));
                    if (dest <= l) post.push_back(fb.var(vpos(dest)));
                    if (!post.empty())
                        conjuncts.push_back(f_or(f_not(ante), FormulaBuilder::conj(post)));
                    add_edge(dest, ante);
                }
                break;
            }
            case PI::Kind::Jump: {
                if (u.jump == 0) {
                    conjuncts.push_back(fb.nvar(vpos(j)));
                    break;
                }
                std::vector<Formula> post;
                for (std::size_t skip = j + 1; skip < j + u.jump && skip <= l; ++skip)
                    post.push_back(fb.nvar(vpos(skip)));
                if (j + u.jump <= l) post.push_back(fb.var(vpos(j + u.jump)));
                if (!post.empty())
                    conjuncts.push_back(
                        f_or(fb.nvar(vpos(j)), FormulaBuilder::conj(post)));
                add_edge(j + u.jump, fb.var(vpos(j)));
                break;
            }
            }
        }

        // support: an executed position needs an executed predecessor that
        // hands control to it
        for (std::size_t p = 2; p <= l; ++p) {
            if (edges[p].empty()) {
                conjuncts.push_back(fb.nvar(vpos(p)));
                continue;
            }
            conjuncts.push_back(f_or(fb.nvar(vpos(p)), FormulaBuilder::disj(edges[p])));
        }
        return FormulaBuilder::conj(conjuncts);
    }
};

} // namespace

ReachabilityFormula build_reachability_formula(const InstructionSequence& x,
                                               const std::vector<bool>& fixed,
                                               int certificate_arity) {
    if (!is_normalized_for_reduction(x))
        throw NotNormalized("sequence is not in reduction normal form");
    auto targets = out_set_true_positions(x);
    if (targets.empty())
        throw MissingTarget("sequence never writes True to the output register");
    const int n = static_cast<int>(fixed.size());
    const int m = certificate_arity;
    if (m < 0) throw ArityMismatch("negative certificate arity");
    const int in_arity = classify(x).in_arity;
    if (in_arity > n + m)
        throw NotNormalized("sequence reads in:" + std::to_string(in_arity) +
                            " beyond the declared " + std::to_string(n + m) + " inputs");

    ReachabilityBuilder builder(x, fixed, m, targets.front());
    ReachabilityFormula result;
    result.formula = builder.build();
    result.num_fixed = n;
    result.num_certificates = m;
    result.num_positions = static_cast<int>(x.size());
    result.target = targets.front();
    return result;
}

SatcInstance reduce_to_satc(const InstructionSequence& x, const std::vector<bool>& fixed,
                            int certificate_arity) {
    ReachabilityFormula phi = build_reachability_formula(x, fixed, certificate_arity);
    return encode_cnf(to_3cnf(phi.formula));
}

ReductionWitness identity_witness(int arity) {
    ReductionWitness w;
    w.source_arity = arity;
    for (int i = 1; i <= arity; ++i)
        w.components.push_back(parse("+in:" + std::to_string(i) + ".get ; out.set:T ; !"));
    w.length_bound = 3;
    return w;
}

bool verify_llred(const TruthTable& f, const TruthTable& g, const ReductionWitness& w) {
    if (static_cast<int>(w.components.size()) != g.arity) return false;
    if (w.source_arity != f.arity) return false;
    std::vector<TruthTable> h;
    for (const auto& x : w.components) {
        if (psize(x) > w.length_bound) return false;
        auto table = truth_table(x, f.arity);
        if (!table) return false; // not a total function on these inputs
        h.push_back(std::move(*table));
    }
    const std::size_t rows = std::size_t{1} << f.arity;
    for (std::size_t r = 0; r < rows; ++r) {
        std::vector<bool> b = table_row_inputs(f.arity, r);
        std::vector<bool> mapped(h.size());
        for (std::size_t i = 0; i < h.size(); ++i) mapped[i] = h[i].eval(b);
        if (f.outputs[r] != g.eval(mapped)) return false;
    }
    return true;
}

ReductionWitness compose_reductions(const ReductionWitness& w1, const ReductionWitness& w2) {
    const int mid_arity = static_cast<int>(w1.components.size());
    if (w2.source_arity != mid_arity)
        throw ArityMismatch("second witness expects arity " + std::to_string(w2.source_arity) +
                            ", first produces " + std::to_string(mid_arity));

    // fresh auxiliary layout: per-component internals first, then one
    // result register per component of w1
    std::vector<int> base(w1.components.size() + 1, 0);
    for (std::size_t i = 0; i < w1.components.size(); ++i)
        base[i + 1] = base[i] + classify(w1.components[i]).max_aux;
    const int internals = base.back();

    std::vector<PI> prefix;
    std::map<int, Focus> result_regs;
    for (std::size_t i = 0; i < w1.components.size(); ++i) {
        const Focus result = Focus::aux(internals + static_cast<int>(i) + 1);
        InstructionSequence seg = halts_to_exits(
            rename_focus(shift_aux(w1.components[i], base[i]), Focus::out(), result));
        prefix.insert(prefix.end(), seg.instrs.begin(), seg.instrs.end());
        result_regs.emplace(static_cast<int>(i) + 1, result);
    }

    ReductionWitness out;
    out.source_arity = w1.source_arity;
    const int y_aux_base = internals + static_cast<int>(w1.components.size());
    std::size_t bound = 0;
    for (const auto& y : w2.components) {
        InstructionSequence body = retarget_inputs(shift_aux(y, y_aux_base), result_regs);
        std::vector<PI> z = prefix;
        z.insert(z.end(), body.instrs.begin(), body.instrs.end());
        bound = std::max(bound, z.size());
        out.components.push_back(InstructionSequence(std::move(z)));
    }
    out.length_bound = bound;
    return out;
}

std::uint64_t count_bound(int k, int n) {
    if (k < 1) throw ArityMismatch("count_bound needs k >= 1");
    const std::uint64_t base = 3 * static_cast<std::uint64_t>(n) +
                               10 * static_cast<std::uint64_t>(k) - 2;
    std::uint64_t result = 1;
    for (int i = 0; i < k; ++i)
        if (__builtin_mul_overflow(result, base, &result))
            throw Error("count_bound overflows 64 bits");
    return result;
}

std::vector<PrimitiveInstruction> risbr_alphabet(int k, int n) {
    if (k < 1) throw ArityMismatch("alphabet needs k >= 1");
    std::vector<BasicInstruction> basics;
    for (int i = 1; i <= n; ++i) basics.push_back({Focus::input(i), Method::Get});
    for (int i = 1; i <= k - 1; ++i) {
        basics.push_back({Focus::aux(i), Method::SetTrue});
        basics.push_back({Focus::aux(i), Method::SetFalse});
        basics.push_back({Focus::aux(i), Method::Get});
    }
    basics.push_back({Focus::out(), Method::SetTrue});
    basics.push_back({Focus::out(), Method::SetFalse});

    std::vector<PI> alphabet;
    for (const auto& b : basics) {
        alphabet.push_back(PI::plain(b));
        alphabet.push_back(PI::pos_test(b));
        alphabet.push_back(PI::neg_test(b));
    }
    for (int jump = 0; jump <= k - 1; ++jump)
        alphabet.push_back(PI::jump_to(static_cast<std::uint32_t>(jump)));
    alphabet.push_back(PI::halt());
    return alphabet;
}

std::uint64_t enumerate_computed_functions(int k, int n, std::uint64_t budget) {
    const std::uint64_t total = count_bound(k, n);
    if (total > budget)
        throw BudgetExceeded("enumeration of " + std::to_string(total) +
                             " sequences exceeds budget " + std::to_string(budget));
    const auto alphabet = risbr_alphabet(k, n);
    std::set<std::vector<bool>> tables;
    std::vector<std::size_t> odometer(static_cast<std::size_t>(k), 0);
    std::vector<PI> instrs(static_cast<std::size_t>(k));
    for (std::uint64_t iter = 0; iter < total; ++iter) {
        for (std::size_t pos = 0; pos < odometer.size(); ++pos)
            instrs[pos] = alphabet[odometer[pos]];
        auto table = truth_table(InstructionSequence(instrs), n);
        if (table) tables.insert(table->outputs);
        for (std::size_t pos = 0; pos < odometer.size(); ++pos) {
            if (++odometer[pos] < alphabet.size()) break;
            odometer[pos] = 0;
        }
    }
    return tables.size();
}

} // namespace spis
