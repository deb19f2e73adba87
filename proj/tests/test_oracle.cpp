#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "mpg/generate.hpp"
#include "mpg/oracle.hpp"

using namespace mpg;
using namespace mpg::fixtures;

TEST_CASE("brute-force value on the fixtures") {
    {
        const OracleReport rep = brute_chibar(fix_a());
        CHECK(rep.chibar == Rat(0));
        REQUIRE(rep.witnesses.size() == 2);
        CHECK(exact_eq(rep.witnesses[0].measure, vec({Rat(1), Rat(0)})));
        CHECK(exact_eq(rep.witnesses[1].measure, vec({Rat(1, 2), Rat(1, 2)})));
    }
    CHECK(brute_chibar(fix_c()).chibar == Rat(3, 2));
    CHECK(brute_chibar(encode_deterministic(fix_d())).chibar == Rat(1, 2));
    CHECK(brute_chibar(fix_b()).chibar == Rat(6, 5));
}

TEST_CASE("per-state mean payoff on the fixtures") {
    CHECK(exact_eq(brute_mean_payoff(fix_a()), vec({Rat(0), Rat(0)})));
    CHECK(exact_eq(brute_mean_payoff(split_loops()), vec({Rat(0), Rat(1)})));
    CHECK(exact_eq(brute_mean_payoff(fix_b()), vec({Rat(6, 5), Rat(6, 5), Rat(6, 5)})));
}

TEST_CASE("eigenpair verification is a strict componentwise test") {
    CHECK(verify_eigenpair(fix_c(), Rat(3, 2), vec({Rat(0)})));
    CHECK(verify_eigenpair(fix_a(), Rat(0), vec({Rat(0), Rat(0)})));
    CHECK_FALSE(verify_eigenpair(fix_a(), Rat(0), vec({Rat(1), Rat(0)})));
    CHECK(verify_eigenpair(fix_b(), Rat(6, 5), vec({Rat(-18, 5), Rat(-16, 5), Rat(0)})));
    // The printed-looking but wrong pair: fails at the last coordinate.
    CHECK_FALSE(verify_eigenpair(fix_b(), Rat(1), vec({Rat(-2), Rat(-2), Rat(0)})));
}

TEST_CASE("payment shifts move the value by exactly the shift") {
    Rng rng(107);
    GameGenParams p;
    p.n_max = 3;
    for (int t = 0; t < 60; ++t) {
        const Game g = random_game(rng, p);
        const Rat alpha(BigInt(rng.range(-9, 9)), BigInt(rng.range(1, 4)));
        const Game shifted = shift_payments(g, constant_vector(g.n, alpha));
        CHECK(brute_chibar(shifted).chibar == brute_chibar(g).chibar + alpha);
    }
}

TEST_CASE("value equals the largest mean-payoff entry and witnesses are exact") {
    Rng rng(109);
    GameGenParams p;
    p.n_max = 3;
    p.force_reducible = true;
    for (int t = 0; t < 60; ++t) {
        const Game g = random_game(rng, p);
        const OracleReport rep = brute_chibar(g);
        Rat top = rep.chi(0);
        for (int i = 1; i < g.n; ++i) top = max(top, rep.chi(i));
        CHECK(top == rep.chibar);
        REQUIRE(!rep.witnesses.empty());
        for (const auto& w : rep.witnesses) {
            CHECK(w.value == rep.chibar);
            Rat mass(0);
            for (int i = 0; i < g.n; ++i) mass += w.measure(i);
            CHECK(mass == Rat(1));
        }
    }
}

TEST_CASE("oversized games are refused") {
    Rng rng(113);
    GameGenParams p;
    p.n_min = 4;
    p.n_max = 4;
    const Game g = random_game(rng, p);
    EnumLimits tiny;
    tiny.pair_cap = 1;
    CHECK_THROWS_AS(brute_chibar(g, tiny), EnumerationTooLarge);
}
