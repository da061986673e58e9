#include <doctest.h>

#include <algorithm>

#include "spis/satc.hpp"
#include "test_util.hpp"

using namespace spis;

namespace {

// Exhaustive enumeration oracle for the canonical literal-set order:
// generate every set of 1..3 distinct literal indices over 1..2k, sort by
// (max index, cardinality, remaining indices lexicographically).
std::vector<std::vector<std::uint64_t>> enumerate_sets(int k) {
    std::vector<std::vector<std::uint64_t>> sets;
    const std::uint64_t top = 2 * static_cast<std::uint64_t>(k);
    for (std::uint64_t a = 1; a <= top; ++a) {
        sets.push_back({a});
        for (std::uint64_t b = a + 1; b <= top; ++b) {
            sets.push_back({a, b});
            for (std::uint64_t c = b + 1; c <= top; ++c) sets.push_back({a, b, c});
        }
    }
    std::sort(sets.begin(), sets.end(), [](const auto& x, const auto& y) {
        if (x.back() != y.back()) return x.back() < y.back();
        if (x.size() != y.size()) return x.size() < y.size();
        return x < y;
    });
    return sets;
}

std::vector<std::uint64_t> indices_of(const LiteralSet& set) {
    std::vector<std::uint64_t> idx;
    for (const auto& lit : set) idx.push_back(literal_index(lit));
    std::sort(idx.begin(), idx.end());
    return idx;
}

CnfFormula clause_set(const CnfFormula& cnf) {
    CnfFormula out;
    for (const auto& cl : cnf.clauses) {
        LiteralSet s = normalize_literal_set(cl);
        out.clauses.push_back(Clause(s.begin(), s.end()));
    }
    std::sort(out.clauses.begin(), out.clauses.end());
    out.clauses.erase(std::unique(out.clauses.begin(), out.clauses.end()), out.clauses.end());
    return out;
}

} // namespace

TEST_CASE("ndisj closed form matches the binomial sums") {
    CHECK(ndisj(0) == 0);
    CHECK(ndisj(1) == 3);
    CHECK(ndisj(2) == 14);
    CHECK(ndisj(3) == 41);
    CHECK(ndisj(4) == 92);
    CHECK(ndisj(5) == 175);
    for (std::uint64_t k = 1; k <= 10; ++k) {
        auto choose = [](std::uint64_t n, std::uint64_t r) {
            std::uint64_t num = 1, den = 1;
            for (std::uint64_t i = 0; i < r; ++i) {
                num *= n - i;
                den *= i + 1;
            }
            return num / den;
        };
        CHECK(ndisj(k) == choose(2 * k, 1) + choose(2 * k, 2) + choose(2 * k, 3));
        CHECK(ndisj(k) == (4 * k * k * k + 5 * k) / 3);
    }
}

TEST_CASE("alpha matches the enumeration oracle up to k = 6") {
    auto sets = enumerate_sets(6);
    REQUIRE(sets.size() == ndisj(6));
    for (std::uint64_t i = 1; i <= sets.size(); ++i) {
        CHECK(indices_of(alpha_unrank(i)) == sets[i - 1]);
        LiteralSet ls;
        for (auto idx : sets[i - 1]) ls.push_back(literal_from_index(idx));
        CHECK(alpha_rank(ls) == i);
    }
}

TEST_CASE("alpha worked examples") {
    CHECK(indices_of(alpha_unrank(1)) == std::vector<std::uint64_t>{1});       // v1
    CHECK(indices_of(alpha_unrank(2)) == std::vector<std::uint64_t>{2});       // ~v1
    CHECK(indices_of(alpha_unrank(3)) == std::vector<std::uint64_t>{1, 2});    // v1 ~v1
    CHECK(indices_of(alpha_unrank(4)) == std::vector<std::uint64_t>{3});       // v2
    CHECK(indices_of(alpha_unrank(7)) == std::vector<std::uint64_t>{1, 2, 3}); // v1 ~v1 v2
    CHECK(alpha_rank({Literal{1, true}}) == 1);
    CHECK(alpha_rank({Literal{1, true}, Literal{1, false}, Literal{2, true}}) == 7);
}

TEST_CASE("alpha is prefix compatible") {
    // sets in block k use only literals over v1..vk, so enumerating with a
    // larger k cannot reorder them
    for (int k = 1; k <= 5; ++k)
        for (std::uint64_t j = 1; j <= ndisj(static_cast<std::uint64_t>(k)); ++j) {
            auto set = alpha_unrank(j);
            for (const auto& lit : set) CHECK(lit.var <= k);
            CHECK(alpha_rank(set) == j);
        }
}

TEST_CASE("alpha round trip at scale") {
    for (std::uint64_t i = 1; i <= ndisj(6); ++i) CHECK(alpha_rank(alpha_unrank(i)) == i);
    // spot checks far out
    for (std::uint64_t i : {100000ull, 123456789ull})
        CHECK(alpha_rank(alpha_unrank(i)) == i);
}

TEST_CASE("encode/decode worked examples") {
    CnfFormula v1{{Clause{{1, true}}}};
    CHECK(encode_cnf(v1) == SatcInstance{true, false, false});

    CnfFormula contradiction{{Clause{{1, true}}, Clause{{1, false}}}};
    CHECK(encode_cnf(contradiction) == SatcInstance{true, true, false});

    CHECK(decode_vector({true, false, false}) == v1);
    CHECK(decode_vector({false, false, false}).clauses.empty());
    // every bit is a clause slot: bit 4 denotes {v2}; ignoring bits of a
    // partially covered block would break the padding law checked below
    CnfFormula v1_v2{{Clause{{1, true}}, Clause{{2, true}}}};
    CHECK(decode_vector({true, false, false, true}) == v1_v2);
}

TEST_CASE("encode covers the variables exactly and decodes back") {
    std::mt19937 rng(31);
    for (int i = 0; i < 100; ++i) {
        CnfFormula cnf = testutil::random_cnf(rng, 1 + static_cast<int>(rng() % 5),
                                              1 + static_cast<int>(rng() % 6), 3);
        SatcInstance w = encode_cnf(cnf);
        CHECK(w.size() == ndisj(static_cast<std::uint64_t>(max_var(cnf))));
        CHECK(clause_set(decode_vector(w)) == clause_set(cnf));
        // no shorter block-length vector decodes to the same clause set:
        // some clause mentions the top variable and outranks every smaller
        // block
        for (std::uint64_t k = 0; ndisj(k) < w.size(); ++k) {
            SatcInstance shorter(w.begin(),
                                 w.begin() + static_cast<std::ptrdiff_t>(ndisj(k)));
            CHECK_FALSE(clause_set(decode_vector(shorter)) == clause_set(cnf));
        }
    }
}

TEST_CASE("satc_eval worked examples") {
    CHECK(satc_eval({true, false, false}));        // v1
    CHECK_FALSE(satc_eval({true, true, false}));   // v1 and ~v1
    CHECK(satc_eval({false, false, true}));        // the tautological clause v1|~v1
}

TEST_CASE("satc_eval agrees with the brute-force sweep") {
    for (std::uint32_t bits = 0; bits < 8; ++bits) {
        SatcInstance w{(bits & 4) != 0, (bits & 2) != 0, (bits & 1) != 0};
        CHECK(satc_eval(w) == testutil::brute_force_sat(decode_vector(w)));
    }
    std::mt19937 rng(32);
    for (int i = 0; i < 200; ++i) {
        SatcInstance w(14);
        for (std::size_t b = 0; b < w.size(); ++b) w[b] = rng() & 1u;
        CHECK(satc_eval(w) == testutil::brute_force_sat(decode_vector(w)));
    }
}

TEST_CASE("padding a False bit never changes satc_eval") {
    std::mt19937 rng(33);
    for (int i = 0; i < 300; ++i) {
        SatcInstance w(rng() % 42);
        for (std::size_t b = 0; b < w.size(); ++b) w[b] = rng() & 1u;
        SatcInstance padded = w;
        padded.push_back(false);
        CHECK(satc_eval(w) == satc_eval(padded));
    }
}

TEST_CASE("sat_solve") {
    CnfFormula v1{{Clause{{1, true}}}};
    auto a = sat_solve(v1);
    REQUIRE(a.has_value());
    CHECK((*a)[0]);

    CnfFormula contradiction{{Clause{{1, true}}, Clause{{1, false}}}};
    CHECK_FALSE(sat_solve(contradiction).has_value());

    std::mt19937 rng(34);
    for (int i = 0; i < 100; ++i) {
        CnfFormula cnf = testutil::random_cnf(rng, 1 + static_cast<int>(rng() % 12),
                                              1 + static_cast<int>(rng() % 30), 3);
        auto result = sat_solve(cnf);
        CHECK(result.has_value() == testutil::brute_force_sat(cnf));
        if (result) CHECK(eval_cnf(cnf, *result)); // the model really satisfies
    }
}

TEST_CASE("to_3cnf is equisatisfiable and 3-wide") {
    CnfFormula direct = to_3cnf(f_var(1));
    REQUIRE(direct.clauses.size() == 1);
    CHECK(direct.clauses[0] == Clause{{1, true}});

    std::mt19937 rng(35);
    for (int i = 0; i < 100; ++i) {
        // keep the first batch small enough to sweep the Tseitin variables too
        const bool tiny = i < 20;
        int vars = 1 + static_cast<int>(rng() % (tiny ? 5 : 10));
        Formula f = testutil::random_formula(rng, vars,
                                             1 + static_cast<int>(rng() % (tiny ? 5 : 12)));
        CnfFormula cnf = to_3cnf(f);
        for (const auto& cl : cnf.clauses) CHECK(cl.size() <= 3);
        CHECK(cnf.clauses.size() <= 3 * formula_size(f) + 1); // stays linear

        bool formula_sat = false;
        for (std::size_t r = 0; r < (std::size_t{1} << vars) && !formula_sat; ++r)
            formula_sat = eval_formula(f, table_row_inputs(vars, r));
        if (tiny) CHECK(formula_sat == testutil::brute_force_sat(cnf));
        CHECK(formula_sat == sat_solve(cnf).has_value());
    }
}
