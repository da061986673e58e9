#include <doctest.h>

#include "spis/reduction.hpp"
#include "spis/synthesis.hpp"
#include "test_util.hpp"

using namespace spis;
using testutil::table_of;

namespace {

// certificate sweep against the independent trace interpreter
bool some_certificate_reaches(const InstructionSequence& x, const std::vector<bool>& fixed,
                              int m, std::size_t target) {
    for (std::uint64_t c = 0; c < (std::uint64_t{1} << m); ++c) {
        std::vector<bool> in = fixed;
        for (int i = 0; i < m; ++i) in.push_back((c >> i) & 1u);
        if (testutil::trace_run(x, in, target).reached) return true;
    }
    return false;
}

// formula satisfiability by sweeping every variable, for the small cases
bool formula_brute_sat(const ReachabilityFormula& phi) {
    const int nv = phi.var_count();
    REQUIRE(nv <= 20);
    for (std::uint64_t a = 0; a < (std::uint64_t{1} << nv); ++a) {
        std::vector<bool> assignment(static_cast<std::size_t>(nv));
        for (int v = 0; v < nv; ++v) assignment[static_cast<std::size_t>(v)] = (a >> v) & 1u;
        if (eval_formula(phi.formula, assignment)) return true;
    }
    return false;
}

} // namespace

TEST_CASE("normalize_for_reduction worked examples") {
    CHECK(render(normalize_for_reduction(parse("out.set:T ; !"))) == "out.set:T ; !");
    CHECK(render(normalize_for_reduction(parse("+in:1.get ; !"))) == "+in:1.get ; ! ; #0");
    CHECK(render(normalize_for_reduction(parse("#9 ; !"))) == "#0 ; !");
    CHECK(render(normalize_for_reduction(parse("out.set:T ; out.set:T ; !"))) ==
          "#1 ; out.set:T ; !");
    CHECK_THROWS_AS(normalize_for_reduction(parse("out.set:F ; !")), HasSetFalse);
}

TEST_CASE("normalization output passes the normal-form check") {
    std::mt19937 rng(41);
    for (int i = 0; i < 200; ++i) {
        auto x = testutil::random_normalized(rng, 4, 2, 2 + rng() % 10);
        CHECK(is_normalized_for_reduction(x));
        // normalizing again changes nothing
        CHECK(normalize_for_reduction(x) == x);
    }
}

TEST_CASE("normalization preserves truth tables on compiler output") {
    std::mt19937 rng(42);
    for (int i = 0; i < 60; ++i) {
        int vars = 1 + static_cast<int>(rng() % 3);
        InstructionSequence x = eliminate_set_false(
            (i % 2 == 0)
                ? inseqcnf(testutil::random_cnf(rng, vars, 1 + static_cast<int>(rng() % 4), 3))
                : inseq_from_table(testutil::random_table(rng, vars)));
        auto y = normalize_for_reduction(x);
        auto tx = truth_table(x, vars);
        auto ty = truth_table(y, vars);
        REQUIRE(tx.has_value());
        REQUIRE(ty.has_value());
        CHECK(*tx == *ty);
    }
}

TEST_CASE("reachability formula on the two-register example") {
    auto x = parse("+in:2.get ; out.set:T ; !");
    // fixed input True, one certificate register
    ReachabilityFormula phi = build_reachability_formula(x, {true}, 1);
    CHECK(phi.num_fixed == 1);
    CHECK(phi.num_certificates == 1);
    CHECK(phi.num_positions == 3);
    CHECK(phi.target == 2);
    CHECK(formula_brute_sat(phi));
    // every satisfying assignment sets the certificate register
    const int nv = phi.var_count();
    for (std::uint64_t a = 0; a < (std::uint64_t{1} << nv); ++a) {
        std::vector<bool> assignment(static_cast<std::size_t>(nv));
        for (int v = 0; v < nv; ++v) assignment[static_cast<std::size_t>(v)] = (a >> v) & 1u;
        if (eval_formula(phi.formula, assignment))
            CHECK(assignment[static_cast<std::size_t>(phi.reg_var(2)) - 1]);
    }
    // same sequence, both fixed-bit values: satisfiable either way since the
    // certificate alone decides reachability
    CHECK(formula_brute_sat(build_reachability_formula(x, {false}, 1)));
    // matches the execution oracle
    CHECK(some_certificate_reaches(x, {true}, 1, 2));
    CHECK(some_certificate_reaches(x, {false}, 1, 2));
}

TEST_CASE("reachability through aux registers pins the write history") {
    // written True, then read: reachable
    auto set_then_read = parse("aux:1.set:T ; +aux:1.get ; out.set:T ; !");
    CHECK(satc_eval(reduce_to_satc(set_then_read, {}, 0)));
    // the write is skipped on input False, and an unwritten register reads
    // False (the never-written arm of the back-reference disjunction)
    auto guarded = parse("+in:1.get ; aux:1.set:T ; +aux:1.get ; out.set:T ; !");
    CHECK(satc_eval(reduce_to_satc(guarded, {true}, 0)));
    CHECK_FALSE(satc_eval(reduce_to_satc(guarded, {false}, 0)));
    // the last write wins
    auto overwritten = parse("aux:1.set:T ; aux:1.set:F ; +aux:1.get ; out.set:T ; !");
    CHECK_FALSE(satc_eval(reduce_to_satc(overwritten, {}, 0)));
    auto rewritten = parse("aux:1.set:F ; aux:1.set:T ; +aux:1.get ; out.set:T ; !");
    CHECK(satc_eval(reduce_to_satc(rewritten, {}, 0)));
}

TEST_CASE("reduce_to_satc on fixed sequences") {
    // certificate decides reachability
    auto x = parse("+in:2.get ; out.set:T ; !");
    CHECK(satc_eval(reduce_to_satc(x, {true}, 1)));
    CHECK(satc_eval(reduce_to_satc(x, {false}, 1)));
    // the write of True sits behind an unconditional halt: never reached
    auto never = parse("in:1.get ; ! ; out.set:T ; !");
    CHECK_FALSE(satc_eval(reduce_to_satc(never, {true}, 1)));
    CHECK_FALSE(satc_eval(reduce_to_satc(never, {false}, 1)));
}

TEST_CASE("reachability formula error cases") {
    CHECK_THROWS_AS(build_reachability_formula(parse("#0"), {}, 0), MissingTarget);
    CHECK_THROWS_AS(build_reachability_formula(parse("out.set:T ; out.set:T ; !"), {}, 0),
                    NotNormalized);
    CHECK_THROWS_AS(build_reachability_formula(parse("+in:1.get ; !"), {true}, 0),
                    NotNormalized);
    CHECK_THROWS_AS(build_reachability_formula(parse("#5 ; out.set:T ; !"), {}, 0),
                    NotNormalized);
    // reads beyond the declared registers
    CHECK_THROWS_AS(build_reachability_formula(parse("in:3.get ; out.set:T ; !"), {true}, 1),
                    NotNormalized);
}

TEST_CASE("reduction pipeline is sound and complete at desk scale") {
    std::mt19937 rng(43);
    int done = 0;
    while (done < 60) {
        const int n = static_cast<int>(rng() % 4);
        const int m = static_cast<int>(rng() % 4);
        auto x = testutil::random_normalized(rng, n + m, 2, 2 + rng() % 9);
        if (classify(x).in_arity > n + m) continue;
        auto targets_at = [&]() {
            for (std::size_t p = 1; p <= x.size(); ++p) {
                const auto& u = x.at(p);
                if (u.has_basic() && u.basic.focus.kind == Focus::Kind::Out) return p;
            }
            return std::size_t{0};
        };
        const std::size_t target = targets_at();
        REQUIRE(target != 0);

        std::vector<bool> fixed(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) fixed[static_cast<std::size_t>(i)] = rng() & 1u;

        const bool oracle = some_certificate_reaches(x, fixed, m, target);
        ReachabilityFormula phi = build_reachability_formula(x, fixed, m);
        CHECK(phi.target == target);
        const bool via_sat = sat_solve(to_3cnf(phi.formula)).has_value();
        const bool via_instance = satc_eval(reduce_to_satc(x, fixed, m));
        CHECK(via_sat == oracle);
        CHECK(via_instance == oracle);
        ++done;
    }
}

TEST_CASE("verify_llred accepts identity witnesses") {
    std::mt19937 rng(44);
    for (int arity = 0; arity <= 3; ++arity) {
        TruthTable f = testutil::random_table(rng, arity);
        CHECK(verify_llred(f, f, identity_witness(arity)));
    }
}

TEST_CASE("verify_llred checks the mapping equation and the bound") {
    TruthTable ident{1, {false, true}};
    TruthTable neg{1, {true, false}};
    ReductionWitness via_not;
    via_not.source_arity = 1;
    via_not.components.push_back(parse("+in:1.get ; #2 ; out.set:T ; !"));
    via_not.length_bound = 4;
    CHECK(verify_llred(neg, ident, via_not)); // ~b = ident(~b)
    CHECK_FALSE(verify_llred(ident, ident, via_not));

    ReductionWitness too_tight = via_not;
    too_tight.length_bound = 2;
    CHECK_FALSE(verify_llred(neg, ident, too_tight));

    // a component that deadlocks is not a total function
    ReductionWitness broken;
    broken.source_arity = 1;
    broken.components.push_back(parse("#0"));
    broken.length_bound = 3;
    CHECK_FALSE(verify_llred(neg, ident, broken));
}

TEST_CASE("compose_reductions yields verified witnesses") {
    std::mt19937 rng(45);
    // identity composed with identity
    {
        TruthTable f = testutil::random_table(rng, 2);
        auto w = compose_reductions(identity_witness(2), identity_witness(2));
        CHECK(verify_llred(f, f, w));
        std::size_t measured = 0;
        for (const auto& z : w.components) measured = std::max(measured, psize(z));
        CHECK(w.length_bound == measured);
    }
    // random chains f -> g -> e built from synthesized component functions
    for (int iter = 0; iter < 50; ++iter) {
        const int n = 1 + static_cast<int>(rng() % 2);
        const int mg = 1 + static_cast<int>(rng() % 2);
        const int me = 1 + static_cast<int>(rng() % 2);

        std::vector<TruthTable> h, k;
        for (int i = 0; i < mg; ++i) h.push_back(testutil::random_table(rng, n));
        for (int j = 0; j < me; ++j) k.push_back(testutil::random_table(rng, mg));
        TruthTable e = testutil::random_table(rng, me);
        TruthTable g = table_of(mg, [&](const std::vector<bool>& y) {
            std::vector<bool> mapped(static_cast<std::size_t>(me));
            for (int j = 0; j < me; ++j)
                mapped[static_cast<std::size_t>(j)] = k[static_cast<std::size_t>(j)].eval(y);
            return e.eval(mapped);
        });
        TruthTable f = table_of(n, [&](const std::vector<bool>& b) {
            std::vector<bool> mapped(static_cast<std::size_t>(mg));
            for (int i = 0; i < mg; ++i)
                mapped[static_cast<std::size_t>(i)] = h[static_cast<std::size_t>(i)].eval(b);
            return g.eval(mapped);
        });

        ReductionWitness w1, w2;
        w1.source_arity = n;
        for (const auto& t : h) w1.components.push_back(inseq_from_table(t));
        w1.length_bound = 5 * (std::size_t{1} << n) - 2;
        w2.source_arity = mg;
        for (const auto& t : k) w2.components.push_back(inseq_from_table(t));
        w2.length_bound = 5 * (std::size_t{1} << mg) - 2;

        REQUIRE(verify_llred(f, g, w1));
        REQUIRE(verify_llred(g, e, w2));
        auto w = compose_reductions(w1, w2);
        CHECK(verify_llred(f, e, w));
    }

    CHECK_THROWS_AS(compose_reductions(identity_witness(2), identity_witness(3)),
                    ArityMismatch);
}

TEST_CASE("count_bound and the restricted alphabet") {
    CHECK(count_bound(1, 0) == 8);
    CHECK(count_bound(1, 2) == 14);
    CHECK(count_bound(2, 1) == 441);
    CHECK(risbr_alphabet(1, 0).size() == 8);
    CHECK(risbr_alphabet(2, 1).size() == 21);
}

TEST_CASE("enumerate_computed_functions") {
    // of the 8 one-instruction sequences only "!" terminates, computing the
    // constant-False 0-ary function
    CHECK(enumerate_computed_functions(1, 0) == 1);
    CHECK(enumerate_computed_functions(1, 1) <= count_bound(1, 1));
    CHECK(enumerate_computed_functions(2, 0) <= count_bound(2, 0));
    CHECK(enumerate_computed_functions(2, 1) <= count_bound(2, 1));
    CHECK_THROWS_AS(enumerate_computed_functions(4, 2, 1000), BudgetExceeded);
}
