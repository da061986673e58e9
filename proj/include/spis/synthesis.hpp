#pragma once

#include <map>

#include "spis/formula.hpp"
#include "spis/isa.hpp"
#include "spis/semantics.hpp"

namespace spis {

// Compile a truth table into a sequence without auxiliary registers.
// Shape per table row count: base cases are 3 instructions, every dispatch
// level adds a test and one jump, psize = 5*2^n - 2. Dispatch nodes above
// the bottom level jump over the whole true-branch block; at the bottom
// level the #2 skip chain through a 3-instruction leaf is exact.
InstructionSequence inseq_from_table(const TruthTable& f, int arity_limit = kDefaultArityLimit);

// Clause-by-clause CNF compiler: only #2 jumps, no auxiliary registers,
// psize = 2*(literal occurrences) + 3*(clause count) + 2.
InstructionSequence inseqcnf(const CnfFormula& cnf);

// Formula compiler: no out.set:F, no auxiliary registers, psize linear in
// formula size.
InstructionSequence inseqf(const Formula& f);

// Circuit compiler: gate k's value lands in aux register k (topological
// numbering); no out.set:F.
InstructionSequence inseqc(const Circuit& c);

// Rewrite a sequence so out.set:F never occurs: the output register moves
// to a fresh auxiliary register and every bare halt gains a copy-out
// prologue. Preserves the computed function, psize < 3 * original.
InstructionSequence eliminate_set_false(const InstructionSequence& x);

// Redirect input reads: every in:i.get (any instruction form) reads map[i]
// instead. Targets must be readable (Input or Aux).
InstructionSequence retarget_inputs(const InstructionSequence& x,
                                    const std::map<int, Focus>& map);

// Focus renaming helper (out -> aux:o etc.); methods are preserved.
InstructionSequence rename_focus(const InstructionSequence& x, const Focus& from,
                                 const Focus& to);

// Shift every auxiliary register index up by `offset`.
InstructionSequence shift_aux(const InstructionSequence& x, int offset);

// Replace each halt by a forward jump to one past the end of the sequence,
// so another sequence can run afterwards.
InstructionSequence halts_to_exits(const InstructionSequence& x);

} // namespace spis
