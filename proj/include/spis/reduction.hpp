#pragma once

#include <cstdint>

#include "spis/formula.hpp"
#include "spis/isa.hpp"
#include "spis/satc.hpp"
#include "spis/semantics.hpp"
#include "spis/synthesis.hpp"

namespace spis {

// Reachability formula for a normalized sequence: register variables
// r_1..r_{n+m} get indices 1..n+m, position variables v_1..v_k follow.
struct ReachabilityFormula {
    Formula formula;
    int num_fixed = 0;        // n, inputs pinned by chi conjuncts
    int num_certificates = 0; // m, free input registers
    int num_positions = 0;    // k = psize(X)
    std::size_t target = 0;   // position of the out.set:T occurrence

    int reg_var(int i) const { return i; }
    int pos_var(int j) const { return num_fixed + num_certificates + j; }
    int var_count() const { return num_fixed + num_certificates + num_positions; }
};

// Normal form for the reduction: no out.set:F, at most one out.set:T
// occurrence (the last one survives, earlier ones become jumps to it),
// jumps land inside the sequence or are #0, and no test sits on the last
// two positions.
InstructionSequence normalize_for_reduction(const InstructionSequence& x);

bool is_normalized_for_reduction(const InstructionSequence& x);

// phi is satisfiable iff some assignment of the m certificate registers
// makes execution of x on fixed+certificate inputs visit the out.set:T
// position.
ReachabilityFormula build_reachability_formula(const InstructionSequence& x,
                                               const std::vector<bool>& fixed,
                                               int certificate_arity);

// Full pipeline: reachability formula -> 3CNF -> instance bits.
SatcInstance reduce_to_satc(const InstructionSequence& x, const std::vector<bool>& fixed,
                            int certificate_arity);

// Length-bounded many-one reducibility witness: f(b) = g(h_1(b),...,h_m(b))
// with each h_i computed by a component of length <= length_bound.
struct ReductionWitness {
    int source_arity = 0;
    std::vector<InstructionSequence> components;
    std::size_t length_bound = 0;
};

ReductionWitness identity_witness(int arity);

bool verify_llred(const TruthTable& f, const TruthTable& g, const ReductionWitness& w);

// Transitivity witness: evaluate w1's components into fresh aux registers,
// then run each component of w2 reading those registers.
ReductionWitness compose_reductions(const ReductionWitness& w1, const ReductionWitness& w2);

// (3n + 10k - 2)^k, the count of candidate sequences of length k over the
// restricted alphabet with n inputs.
std::uint64_t count_bound(int k, int n);

// The alphabet behind count_bound: n input reads, k-1 aux registers with
// three methods each, the two output writes, each in three instruction
// forms, plus jumps #0..#(k-1) and halt.
std::vector<PrimitiveInstruction> risbr_alphabet(int k, int n);

inline constexpr std::uint64_t kDefaultEnumerationBudget = 20'000'000;

// Number of distinct n-ary truth tables computed by length-k sequences
// over risbr_alphabet(k, n).
std::uint64_t enumerate_computed_functions(int k, int n,
                                           std::uint64_t budget = kDefaultEnumerationBudget);

} // namespace spis
