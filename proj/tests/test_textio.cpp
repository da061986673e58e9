#include <doctest.h>

#include "spis/textio.hpp"
#include "test_util.hpp"

using namespace spis;

TEST_CASE("truth table text form") {
    TruthTable t{2, {true, false, false, true}};
    CHECK(render_truth_table(t) == "n=2\n1001\n");
    CHECK(parse_truth_table("n=2\n1001\n") == t);
    CHECK(parse_truth_table("n=2\n1001") == t);
    CHECK_THROWS_AS(parse_truth_table("n=2\n101"), SyntaxError);
    CHECK_THROWS_AS(parse_truth_table("arity 2\n1001"), SyntaxError);
    CHECK_THROWS_AS(parse_truth_table("n=1\n1x"), SyntaxError);
}

TEST_CASE("bit strings") {
    CHECK(parse_bits("1011") == Bits{true, false, true, true});
    CHECK(parse_bits(" 10 11\n") == Bits{true, false, true, true});
    CHECK(render_bits({true, false}) == "10");
    CHECK(parse_bits("").empty());
    CHECK_THROWS_AS(parse_bits("12"), SyntaxError);
}

TEST_CASE("DIMACS round trip") {
    const char* text = "c sample\np cnf 3 2\n1 -2 0\n2 3 -1 0\n";
    CnfFormula cnf = parse_dimacs(text);
    REQUIRE(cnf.clauses.size() == 2);
    CHECK(cnf.clauses[0] == Clause{{1, true}, {2, false}});
    CHECK(cnf.clauses[1] == Clause{{2, true}, {3, true}, {1, false}});
    CHECK(parse_dimacs(render_dimacs(cnf)) == cnf);
    CHECK_THROWS_AS(parse_dimacs("1 2 0"), SyntaxError);
    CHECK_THROWS_AS(parse_dimacs("p cnf 1 1\n1"), SyntaxError);
    CHECK_THROWS_AS(parse_dimacs("p cnf 2 1\n0"), EmptyClause);
}

TEST_CASE("formula grammar and precedence") {
    Formula f = parse_formula("~v1 & v2 | v3");
    // ~ binds tighter than &, & tighter than |
    CHECK(render_formula(f) == "~v1 & v2 | v3");
    REQUIRE(f->kind == FormulaNode::Kind::Or);
    CHECK(f->lhs->kind == FormulaNode::Kind::And);

    CHECK(render_formula(parse_formula("~(v1 | v2)")) == "~(v1 | v2)");
    CHECK(render_formula(parse_formula("(v1 | v2) & v3")) == "(v1 | v2) & v3");
    CHECK_THROWS_AS(parse_formula("v1 &"), SyntaxError);
    CHECK_THROWS_AS(parse_formula("x1"), SyntaxError);
    CHECK_THROWS_AS(parse_formula("v1 v2"), SyntaxError);

    std::mt19937 rng(61);
    for (int i = 0; i < 100; ++i) {
        Formula g = testutil::random_formula(rng, 5, 1 + rng() % 12);
        Formula back = parse_formula(render_formula(g));
        for (std::size_t r = 0; r < 32; ++r)
            CHECK(eval_formula(g, table_row_inputs(5, r)) ==
                  eval_formula(back, table_row_inputs(5, r)));
    }
}

TEST_CASE("circuit text form") {
    const char* text =
        "g1 = NOT in1\n"
        "g2 = AND g1 in2\n"
        "out = g2\n";
    Circuit c = parse_circuit(text);
    CHECK(c.num_inputs == 2);
    REQUIRE(c.gates.size() == 2);
    CHECK(eval_circuit(c, {false, true}));
    CHECK_FALSE(eval_circuit(c, {true, true}));

    // declaration order does not have to be topological
    const char* reordered =
        "g2 = AND g1 in2\n"
        "g1 = NOT in1\n"
        "out = g2\n";
    Circuit c2 = parse_circuit(reordered);
    CHECK(eval_circuit(c2, {false, true}));

    CHECK_THROWS_AS(parse_circuit("g1 = XOR in1 in2\nout = g1\n"), SyntaxError);
    CHECK_THROWS_AS(parse_circuit("g1 = NOT in1\n"), SyntaxError); // no output
    CHECK_THROWS_AS(parse_circuit("out = g7\n"), SyntaxError);
}

TEST_CASE("family prefix file") {
    std::vector<TruthTable> fam{TruthTable{0, {true}}, TruthTable{1, {true, false}}};
    FamilyPrefix p = make_family_prefix(fam);
    std::string text = render_family_prefix(p);
    CHECK(text == "n=0\n1\nn=1\n10\n");
    FamilyPrefix back = parse_family_prefix(text);
    REQUIRE(back.max_arity() == 1);
    CHECK(back.at_arity(1) == fam[1]);
}

TEST_CASE("literal sets") {
    LiteralSet s = parse_literal_set("v1 ~v1 v2");
    CHECK(render_literal_set(s) == "v1 ~v1 v2");
    CHECK(alpha_rank(s) == 7);
    CHECK(render_literal_set(alpha_unrank(7)) == "v1 ~v1 v2");
    CHECK_THROWS_AS(parse_literal_set("v1 w2"), SyntaxError);
    CHECK_THROWS_AS(parse_literal_set(""), EmptyClause);
    CHECK_THROWS_AS(parse_literal_set("v1 v2 v3 v4"), ClauseTooWide);
}
