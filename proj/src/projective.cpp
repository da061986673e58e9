#include "spis/projective.hpp"

namespace spis {

Bits pair_bits(const Bits& w, const Bits& c) {
    Bits out;
    out.reserve(2 * w.size() + 2 + c.size());
    for (bool b : w) {
        out.push_back(b);
        out.push_back(b);
    }
    out.push_back(true);
    out.push_back(false);
    out.insert(out.end(), c.begin(), c.end());
    return out;
}

std::pair<Bits, Bits> unpair_bits(const Bits& x) {
    Bits w;
    std::size_t i = 0;
    for (;; i += 2) {
        if (i + 2 > x.size()) throw Malformed("bit string ends before the pair separator");
        const bool a = x[i], b = x[i + 1];
        if (a == b) {
            w.push_back(a);
            continue;
        }
        if (a && !b) break; // (True,False) separator
        throw Malformed("(False,True) is neither a doubled bit nor the separator");
    }
    return {std::move(w), Bits(x.begin() + static_cast<std::ptrdiff_t>(i) + 2, x.end())};
}

Bits gamma_pad(const Bits& c, std::size_t target) {
    if (target < 2 * c.size())
        throw TargetTooSmall("need at least " + std::to_string(2 * c.size()) + " bits, got " +
                             std::to_string(target));
    Bits out;
    out.reserve(target);
    for (std::size_t i = 0; i < c.size(); ++i) {
        out.push_back(c[i]);
        out.push_back(i + 1 != c.size());
    }
    out.resize(target, false);
    return out;
}

Bits gamma_unpad(const Bits& x) {
    Bits c;
    for (std::size_t i = 0; i + 2 <= x.size(); i += 2) {
        c.push_back(x[i]);
        if (!x[i + 1]) return c; // False marker closes the encoding
    }
    throw Malformed("no terminating marker in the interleaved encoding");
}

TruthTable project(const TruthTable& f, int target_arity) {
    if (target_arity > f.arity)
        throw ArityMismatch("projection cannot increase arity");
    if (target_arity < 0) throw ArityMismatch("negative arity");
    TruthTable out = TruthTable::of_arity(target_arity);
    const int drop = f.arity - target_arity;
    for (std::size_t r = 0; r < out.outputs.size(); ++r)
        out.outputs[r] = f.outputs[r << drop]; // trailing inputs pinned False
    return out;
}

FamilyPrefix make_family_prefix(std::vector<TruthTable> tables) {
    for (std::size_t n = 0; n < tables.size(); ++n)
        if (tables[n].arity != static_cast<int>(n))
            throw ArityMismatch("family entry " + std::to_string(n) + " has arity " +
                                std::to_string(tables[n].arity));
    return FamilyPrefix{std::move(tables)};
}

bool is_projective(const FamilyPrefix& prefix) {
    for (int n = 0; n + 1 <= prefix.max_arity(); ++n)
        if (!(prefix.at_arity(n) == project(prefix.at_arity(n + 1), n))) return false;
    return true;
}

FamilyPrefix projectivize(const FamilyPrefix& prefix) {
    const int N = prefix.max_arity();
    auto decode = [&](const Bits& x) {
        Bits padded = x;
        padded.resize(static_cast<std::size_t>(2 * N + 1), false);
        Bits payload;
        for (int i = 1; i <= N; ++i) {
            payload.push_back(padded[static_cast<std::size_t>(2 * i - 2)]);
            if (!padded[static_cast<std::size_t>(2 * i - 1)])
                return prefix.at_arity(i).eval(payload);
        }
        return false;
    };
    std::vector<TruthTable> out;
    for (int a = 0; a <= 2 * N + 1; ++a) {
        TruthTable t = TruthTable::of_arity(a);
        for (std::size_t r = 0; r < t.outputs.size(); ++r)
            t.outputs[r] = decode(table_row_inputs(a, r));
        out.push_back(std::move(t));
    }
    return make_family_prefix(std::move(out));
}

std::vector<InstructionSequence> interleave_witnesses(int arity) {
    if (arity < 1) throw ArityMismatch("interleave witnesses need arity >= 1");
    std::vector<InstructionSequence> out;
    for (int i = 1; i <= arity; ++i) {
        out.push_back(parse("+in:" + std::to_string(i) + ".get ; out.set:T ; !"));
        out.push_back(i != arity ? parse("out.set:T ; !") : parse("!"));
    }
    return out;
}

Bits interleave(const Bits& b) {
    Bits out;
    for (std::size_t i = 0; i < b.size(); ++i) {
        out.push_back(b[i]);
        out.push_back(i + 1 != b.size());
    }
    return out;
}

} // namespace spis
