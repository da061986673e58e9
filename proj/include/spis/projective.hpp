#pragma once

#include <vector>

#include "spis/isa.hpp"
#include "spis/semantics.hpp"

namespace spis {

using Bits = std::vector<bool>;

// (b1,b1,...,bn,bn,True,False,c1,...,cn'): duplicated payload bits, a
// (True,False) separator, then the second component raw.
Bits pair_bits(const Bits& w, const Bits& c);
std::pair<Bits, Bits> unpair_bits(const Bits& x);

// Self-delimiting interleave: data bits alternate with continuation
// markers (True = more to come, False = last), then False padding up to
// `target` bits.
Bits gamma_pad(const Bits& c, std::size_t target);
Bits gamma_unpad(const Bits& x);

// Trailing-False projection: (pi f)(b) = f(b, F, ..., F).
TruthTable project(const TruthTable& f, int target_arity);

// Tables for arities 0..N, entry n of arity n.
struct FamilyPrefix {
    std::vector<TruthTable> tables;

    int max_arity() const { return static_cast<int>(tables.size()) - 1; }
    const TruthTable& at_arity(int n) const { return tables[static_cast<std::size_t>(n)]; }
};

FamilyPrefix make_family_prefix(std::vector<TruthTable> tables); // validates arities

bool is_projective(const FamilyPrefix& prefix);

// Projective family prefix g_0..g_{2N+1} embedding f_1..f_N: scanning the
// F-padded input two bits at a time, the first pair with a False marker
// selects f_m applied to the data bits seen so far; no marker means False.
// Satisfies f_n(b) = g_{2n}(interleave(b)) for interleave = gamma-style
// encoding with markers (T,...,T,F).
FamilyPrefix projectivize(const FamilyPrefix& prefix);

// Sequences computing the interleave encoding components: odd index 2i-1
// copies input i, even index 2i is constant True except the last, which is
// constant False. Each has psize <= 3.
std::vector<InstructionSequence> interleave_witnesses(int arity);

Bits interleave(const Bits& b); // the encoding itself, for tests and tools

} // namespace spis
