#pragma once

#include <string>
#include <string_view>

#include "spis/formula.hpp"
#include "spis/projective.hpp"
#include "spis/satc.hpp"
#include "spis/semantics.hpp"

namespace spis {

// Truth table: a line "n=<arity>" then 2^arity characters of 1/0,
// position 1 varying slowest.
TruthTable parse_truth_table(std::string_view text);
std::string render_truth_table(const TruthTable& t);

// Bit strings: 1/0 characters, most significant first.
Bits parse_bits(std::string_view text);
std::string render_bits(const Bits& bits);

// DIMACS CNF.
CnfFormula parse_dimacs(std::string_view text);
std::string render_dimacs(const CnfFormula& cnf);

// Formula grammar: ~ binds tighter than &, & tighter than |; variables
// v1, v2, ...; parentheses allowed.
Formula parse_formula(std::string_view text);
std::string render_formula(const Formula& f);

// Circuit lines: "g<k> = NOT <node>", "g<k> = OR <node> <node>",
// "g<k> = AND <node> <node>", "out = <node>"; nodes are in<k> or g<k>.
Circuit parse_circuit(std::string_view text);

// Concatenated truth-table blocks, arity 0 first.
FamilyPrefix parse_family_prefix(std::string_view text);
std::string render_family_prefix(const FamilyPrefix& prefix);

// Literal sets: space-separated v<k> / ~v<k>.
LiteralSet parse_literal_set(std::string_view text);
std::string render_literal_set(const LiteralSet& set);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

} // namespace spis
