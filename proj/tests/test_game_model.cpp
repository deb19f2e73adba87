#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "mpg/generate.hpp"
#include "mpg/shapley.hpp"

using namespace mpg;
using namespace mpg::fixtures;

TEST_CASE("parse/serialize round-trips the fixtures field-exactly") {
    for (const Game& g : {fix_a(), fix_b(), fix_c(), split_loops()}) {
        const std::string text = serialize_game(g);
        CHECK(parse_game(text) == g);
    }
    const DetGame d = fix_d();
    CHECK(parse_det_game(serialize_det_game(d)) == d);
}

TEST_CASE("parse/serialize round-trips random games") {
    Rng rng(3);
    GameGenParams p;
    for (int t = 0; t < 50; ++t) {
        const Game g = random_game(rng, p);
        CHECK(parse_game(serialize_game(g)) == g);
    }
    DetGenParams dp;
    for (int t = 0; t < 50; ++t) {
        const DetGame dg = random_det_game(rng, dp);
        CHECK(parse_det_game(serialize_det_game(dg)) == dg);
    }
}

TEST_CASE("smallest legal game parses and malformed inputs are rejected") {
    const Game c = parse_game(serialize_game(fix_c()));
    CHECK(c.n == 1);
    CHECK(c.at(0, 0, 0).payment == Rat(3, 2));
    // T(x) = 3/2 + x
    CHECK(exact_eq(eval_T(c, vec({Rat(5)})), vec({Rat(13, 2)})));

    // Non-stochastic row: (1/2, 1/3).
    const std::string bad = R"({"n": 2, "states": [
        {"min_actions": [{"max_actions": [{"r": "0", "p": ["1/2", "1/3"]}]}]},
        {"min_actions": [{"max_actions": [{"r": "0", "p": ["1", "0"]}]}]}]})";
    CHECK_THROWS_AS(parse_game(bad), InvariantViolation);

    const std::string empty_actions = R"({"n": 1, "states": [{"min_actions": []}]})";
    CHECK_THROWS_AS(parse_game(empty_actions), InvariantViolation);

    CHECK_THROWS_AS(parse_game("{not json"), ParseError);
    CHECK_THROWS_AS(parse_game(R"({"n": 1})"), ParseError);
    CHECK_THROWS_AS(parse_game(R"({"n": 1, "states": [{"min_actions":
        [{"max_actions": [{"r": "2/4", "p": ["1"]}]}]}]})"), ParseError);
}

TEST_CASE("deterministic encoding matches the documented arcs") {
    // Single self-loop.
    DetGame loop;
    loop.m = 1;
    loop.n = 1;
    loop.A = {{BigInt(0)}};
    loop.B = {{BigInt(5)}};
    const Game g1 = encode_deterministic(loop);
    CHECK(g1.n == 1);
    CHECK(g1.at(0, 0, 0).payment == Rat(5));
    CHECK(g1.at(0, 0, 0).transition(0) == Rat(1));

    // Two-cycle: 0 -> 1 at payment 2, 1 -> 0 at payment -1.
    const Game g2 = encode_deterministic(fix_d());
    CHECK(g2.n == 2);
    CHECK(g2.min_count(0) == 1);
    CHECK(g2.max_count(0, 0) == 1);
    CHECK(g2.at(0, 0, 0).payment == Rat(2));
    CHECK(g2.at(0, 0, 0).transition(1) == Rat(1));
    CHECK(g2.at(1, 0, 0).payment == Rat(-1));
    CHECK(g2.at(1, 0, 0).transition(0) == Rat(1));

    // A B-row with no finite entry is rejected.
    DetGame bad;
    bad.m = 2;
    bad.n = 1;
    bad.A = {{std::nullopt}, {BigInt(0)}};
    bad.B = {{BigInt(0)}, {std::nullopt}};
    CHECK_THROWS_AS(encode_deterministic(bad), InvariantViolation);
}

TEST_CASE("encoded operator equals the direct bipartite recursion on random pairs") {
    Rng rng(17);
    DetGenParams p;
    for (int t = 0; t < 100; ++t) {
        const DetGame dg = random_det_game(rng, p);
        const Game g = encode_deterministic(dg);
        RatVector x(dg.n);
        for (int i = 0; i < dg.n; ++i)
            x(i) = Rat(BigInt(rng.range(-20, 20)), BigInt(rng.range(1, 7)));
        CHECK(exact_eq(eval_T(g, x), eval_det_operator(dg, x)));
    }
}

TEST_CASE("magnitude bound on the fixtures") {
    CHECK(magnitude_bound(fix_c()) == 3);
    CHECK(magnitude_bound(fix_a()) == 3);
    // All-zero payments, probabilities in {0, 1}: clamped at 2.
    Game g;
    g.n = 2;
    g.states.resize(2);
    g.states[0].min_actions.push_back(MinAction{{mk(Rat(0), {Rat(0), Rat(1)})}});
    g.states[1].min_actions.push_back(MinAction{{mk(Rat(0), {Rat(1), Rat(0)})}});
    CHECK(magnitude_bound(g) == 2);
}

TEST_CASE("perturbation parameters evaluate the required bounds") {
    const PerturbSpec a = perturbation_params(fix_a());
    CHECK(a.D == 3);
    CHECK(a.M == Rat(1945));
    CHECK(a.eps == Rat(1, 2125765));
    CHECK(a.g.size() == 2);
    CHECK(a.g(0) == Rat(1, 2125765));
    CHECK(a.g(1) == a.eps * a.eps);

    const PerturbSpec c = perturbation_params(fix_c());  // n = 1, D = 3
    CHECK(c.M == Rat(4 * 3 * 3 + 1));

    // n = 1, D = 2.
    Game one;
    one.n = 1;
    one.states.resize(1);
    one.states[0].min_actions.push_back(MinAction{{mk(Rat(1, 2), {Rat(1)})}});
    const PerturbSpec s = perturbation_params(one);
    CHECK(s.D == 2);
    CHECK(s.M == Rat(17));
    CHECK(s.eps == Rat(1, 17));
}

TEST_CASE("deterministic perturbation parameters") {
    DetGame d3;  // n = 3, D = 2
    d3.m = 1;
    d3.n = 3;
    d3.A = {{BigInt(0), BigInt(1), BigInt(-2)}};
    d3.B = {{BigInt(1), BigInt(0), BigInt(2)}};
    const PerturbSpec s3 = perturbation_params_det(d3);
    CHECK(s3.M == Rat(25));
    CHECK(s3.eps == Rat(1, 28));
    CHECK(exact_eq(s3.g, vec({Rat(1, 28), Rat(1, 784), Rat(1, 21952)})));

    DetGame d1;  // n = 1, D = 2
    d1.m = 1;
    d1.n = 1;
    d1.A = {{BigInt(2)}};
    d1.B = {{BigInt(0)}};
    const PerturbSpec s1 = perturbation_params_det(d1);
    CHECK(s1.M == Rat(9));
    CHECK(s1.eps == Rat(1, 2));

    const PerturbSpec sd = perturbation_params_det(fix_d());  // n = 2, D = 2
    CHECK(sd.M == Rat(17));
    CHECK(sd.eps == Rat(1, 9));
}

TEST_CASE("perturbation parameters satisfy the strict open bounds, randomized") {
    Rng rng(29);
    GameGenParams p;
    for (int t = 0; t < 40; ++t) {
        const Game g = random_game(rng, p);
        const PerturbSpec s = perturbation_params(g);
        const unsigned n = static_cast<unsigned>(g.n);
        // M > 4 n^{n/2} D^{n^2+1}, squared to stay rational.
        const BigInt lhs = s.M.num() * s.M.num();
        const BigInt rhs = 16 * ipow(BigInt(n), n) * ipow(s.D, 2 * (n * n + 1));
        CHECK(s.M.den() == 1);
        CHECK(lhs > rhs);
        // eps * (n^n D^{2n(n+1)}) < 1.
        CHECK(s.eps * Rat(ipow(BigInt(n), n) * ipow(s.D, 2 * n * (n + 1))) < Rat(1));
        CHECK(Rat(0) < s.eps);
        CHECK(s.eps < Rat(1));
        // g strictly decreasing and positive, with ratio eps.
        for (int i = 0; i < g.n; ++i) {
            CHECK(s.g(i).sign() > 0);
            if (i > 0) {
                CHECK(s.g(i) < s.g(i - 1));
                CHECK(s.g(i) == s.eps * s.g(i - 1));
            }
        }
    }
}

TEST_CASE("doubled game: structure and operator identity") {
    // One-state loop with penalty 10, no perturbation: the doubled operator
    // is (3/2 + y, max(x, -10 + x)) = (3/2 + y, x).
    const Game c = fix_c();
    const Game dc = big_m_double(c, Rat(10), vec({Rat(0)}));
    CHECK(dc.n == 2);
    RatVector xy(2);
    xy << Rat(7, 3), Rat(-1);
    const RatVector out = eval_T(dc, xy);
    CHECK(out(0) == Rat(3, 2) + Rat(-1));
    CHECK(out(1) == Rat(7, 3));

    const Game a = fix_a();
    const PerturbSpec spec = perturbation_params(a);
    const Game da = big_m_double(a, spec);
    CHECK(da.n == 4);
    // Payments of the original block are shifted by the perturbation.
    CHECK(da.at(0, 0, 0).payment == a.at(0, 0, 0).payment + spec.g(0));
    CHECK(da.at(1, 0, 1).payment == a.at(1, 0, 1).payment + spec.g(1));
    // Min policy sets are in bijection: teleport states have one action.
    CHECK(da.min_count(2) == 1);
    CHECK(da.min_count(3) == 1);
    // Teleport payments are 0 on the diagonal and -M elsewhere.
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            CHECK(da.at(2 + i, 0, j).payment == (i == j ? Rat(0) : -spec.M));
            CHECK(da.at(2 + i, 0, j).transition(j) == Rat(1));
        }
}

TEST_CASE("doubled operator equals (g + T(y), R_M(x)) on random games") {
    Rng rng(31);
    GameGenParams p;
    for (int t = 0; t < 60; ++t) {
        const Game g = random_game(rng, p);
        const PerturbSpec spec = perturbation_params(g);
        const Game dg = big_m_double(g, spec);
        RatVector x(g.n), y(g.n);
        for (int i = 0; i < g.n; ++i) {
            x(i) = Rat(BigInt(rng.range(-12, 12)), BigInt(rng.range(1, 5)));
            y(i) = Rat(BigInt(rng.range(-12, 12)), BigInt(rng.range(1, 5)));
        }
        RatVector xy(2 * g.n);
        xy.head(g.n) = x;
        xy.tail(g.n) = y;
        const RatVector lhs = eval_T(dg, xy);
        const RatVector ty = eval_T(g, y);
        const RatVector rx = apply_RM(x, spec.M);
        for (int i = 0; i < g.n; ++i) {
            CHECK(lhs(i) == spec.g(i) + ty(i));
            CHECK(lhs(g.n + i) == rx(i));
        }
    }
}

TEST_CASE("deterministic completion replaces missing entries by -M") {
    const DetGame d = fix_d();
    const DetGame dm = big_m_complete_det(d, Rat(17));
    CHECK(dm.B[0][0].value() == -17);
    CHECK(dm.B[0][1].value() == 2);
    CHECK(dm.B[1][0].value() == -1);
    CHECK(dm.B[1][1].value() == -17);
    CHECK(dm.A == d.A);

    // No missing entries: unchanged.
    DetGame full;
    full.m = 1;
    full.n = 1;
    full.A = {{BigInt(0)}};
    full.B = {{BigInt(5)}};
    CHECK(big_m_complete_det(full, Rat(9)) == full);

    CHECK_THROWS_AS(big_m_complete_det(d, Rat(1, 2)), InvariantViolation);
    CHECK_THROWS_AS(big_m_complete_det(d, Rat(-3)), InvariantViolation);
}
