#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "spis/formula.hpp"

namespace spis {

// A set of at most three distinct literals, kept sorted by literal index.
using LiteralSet = std::vector<Literal>;

// Bit-vector encoding of a 3CNF formula: bit i says whether the i-th
// literal set in the canonical enumeration occurs as a clause.
using SatcInstance = std::vector<bool>;

// v_j has literal index 2j-1, ~v_j has 2j.
std::uint64_t literal_index(const Literal& lit);
Literal literal_from_index(std::uint64_t idx);

// Number of clause slots over variables v1..vk: C(2k,1)+C(2k,2)+C(2k,3)
// = (4k^3+5k)/3.
std::uint64_t ndisj(std::uint64_t k);

// Canonical enumeration of literal sets: ordered by maximum literal index,
// then cardinality, then lexicographically on the remaining indices. The
// ordering is prefix-compatible across variable counts.
LiteralSet alpha_unrank(std::uint64_t position);
std::uint64_t alpha_rank(const LiteralSet& set);

LiteralSet normalize_literal_set(const Clause& clause); // dedupe + sort + width check

// Shortest instance whose decoding equals the clause set of cnf.
SatcInstance encode_cnf(const CnfFormula& cnf);

// Clauses of the instance; bits beyond the last complete enumeration block
// are ignored.
CnfFormula decode_vector(const SatcInstance& w);

inline constexpr std::size_t kDefaultInstanceLimit = std::size_t{1} << 28;

// Satisfiability of the decoded instance.
bool satc_eval(const SatcInstance& w, std::size_t instance_limit = kDefaultInstanceLimit);

// DPLL with unit propagation. Returns an assignment for v1..v_max_var or
// nullopt when unsatisfiable.
std::optional<std::vector<bool>> sat_solve(const CnfFormula& cnf);

// Structural (Tseitin-style) conversion with one fresh variable per
// distinct connective node; equisatisfiable, size linear in formula size.
CnfFormula to_3cnf(const Formula& f);

} // namespace spis
