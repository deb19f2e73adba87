#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "mpg/generate.hpp"
#include "mpg/shapley.hpp"

using namespace mpg;
using namespace mpg::fixtures;

namespace {

RatVector random_vec(Rng& rng, int n, int mag = 12, int den = 5) {
    RatVector x(n);
    for (int i = 0; i < n; ++i)
        x(i) = Rat(BigInt(rng.range(-mag, mag)), BigInt(rng.range(1, den)));
    return x;
}

// All Max policies of a game, odometer order; exhaustive-search helper.
std::vector<MaxPolicy> all_max_policies(const Game& g) {
    std::vector<std::pair<int, int>> slots;
    std::vector<int> radix;
    for (int i = 0; i < g.n; ++i)
        for (int a = 0; a < g.min_count(i); ++a) {
            slots.push_back({i, a});
            radix.push_back(g.max_count(i, a));
        }
    std::vector<MaxPolicy> out;
    std::vector<int> cur(slots.size(), 0);
    while (true) {
        MaxPolicy tau = least_index_max_policy(g);
        for (size_t s = 0; s < slots.size(); ++s) tau.choice[slots[s].first][slots[s].second] = cur[s];
        out.push_back(tau);
        size_t s = 0;
        for (; s < slots.size(); ++s) {
            if (++cur[s] < radix[s]) break;
            cur[s] = 0;
        }
        if (s == slots.size()) break;
    }
    return out;
}

std::vector<MinPolicy> all_min_policies(const Game& g) {
    std::vector<MinPolicy> out;
    std::vector<int> cur(g.n, 0);
    while (true) {
        out.push_back(MinPolicy{cur});
        int i = 0;
        for (; i < g.n; ++i) {
            if (++cur[i] < g.min_count(i)) break;
            cur[i] = 0;
        }
        if (i == g.n) break;
    }
    return out;
}

}  // namespace

TEST_CASE("operator evaluation on the fixtures") {
    CHECK(exact_eq(eval_T(fix_c(), vec({Rat(0)})), vec({Rat(3, 2)})));
    CHECK(exact_eq(eval_T(fix_a(), vec({Rat(0), Rat(0)})), vec({Rat(0), Rat(0)})));
    CHECK(exact_eq(eval_T(fix_b(), vec({Rat(0), Rat(0), Rat(0)})),
                   vec({Rat(0), Rat(1), Rat(3)})));
}

TEST_CASE("reduced operators on the fixtures") {
    // One Min action everywhere: the reduction changes nothing.
    const Game a = fix_a();
    const MinPolicy sa{{0, 0}};
    for (int t = 0; t < 5; ++t) {
        const RatVector x = vec({Rat(t), Rat(3 - t)});
        CHECK(exact_eq(eval_T_sigma(a, sa, x), eval_T(a, x)));
    }

    const Game b = fix_b();
    const MinPolicy sb{{0, 1, 0}};
    CHECK(exact_eq(eval_T_sigma(b, sb, vec({Rat(0), Rat(0), Rat(0)})),
                   vec({Rat(0), Rat(1), Rat(3)})));

    // Chain extraction from the two-cycle.
    const Game d = encode_deterministic(fix_d());
    const Chain ch = induced_chain(d, MinPolicy{{0, 0}}, {0, 0});
    CHECK(exact_eq(ch.r, vec({Rat(2), Rat(-1)})));
    CHECK(ch.P(0, 1) == Rat(1));
    CHECK(ch.P(1, 0) == Rat(1));
}

TEST_CASE("reduction is tight: min over sigma and max over tau recover T") {
    Rng rng(61);
    GameGenParams p;
    p.n_max = 3;
    for (int t = 0; t < 30; ++t) {
        const Game g = random_game(rng, p);
        const RatVector x = random_vec(rng, g.n);
        const RatVector tx = eval_T(g, x);

        RatVector min_sigma;
        bool first = true;
        for (const MinPolicy& sigma : all_min_policies(g)) {
            const RatVector v = eval_T_sigma(g, sigma, x);
            if (first) {
                min_sigma = v;
                first = false;
            } else {
                for (int i = 0; i < g.n; ++i)
                    if (v(i) < min_sigma(i)) min_sigma(i) = v(i);
            }
            for (int i = 0; i < g.n; ++i) CHECK(tx(i) <= v(i));
        }
        CHECK(exact_eq(min_sigma, tx));

        RatVector max_tau;
        first = true;
        for (const MaxPolicy& tau : all_max_policies(g)) {
            const RatVector v = eval_T_tau(g, tau, x);
            if (first) {
                max_tau = v;
                first = false;
            } else {
                for (int i = 0; i < g.n; ++i)
                    if (max_tau(i) < v(i)) max_tau(i) = v(i);
            }
            for (int i = 0; i < g.n; ++i) CHECK(v(i) <= tx(i));
        }
        CHECK(exact_eq(max_tau, tx));
    }
}

TEST_CASE("chain operator is affine in the frozen pair") {
    const Game b = fix_b();
    const MinPolicy sigma{{0, 1, 0}};
    MaxPolicy tau = least_index_max_policy(b);
    tau.choice[1][1] = 1;
    const RatVector x = vec({Rat(1), Rat(-2), Rat(1, 3)});
    const Chain ch = induced_chain(b, sigma, {0, 1, 0});
    CHECK(exact_eq(eval_chain_op(b, sigma, tau, x), RatVector(ch.r + ch.P * x)));
}

TEST_CASE("conservative greedy improvement") {
    const Game b = fix_b();
    const RatVector zero = vec({Rat(0), Rat(0), Rat(0)});

    // At zero: state 0 terms are (0, 1) -> action 0; state 1 terms are
    // (2, 1) -> action 1; state 2 has one action.
    const MinPolicy from_any = argmin_policy(b, zero, MinPolicy{{1, 0, 0}});
    CHECK(from_any.choice == std::vector<int>{0, 1, 0});

    // Conservativeness: prev kept wherever it still attains the minimum.
    const MinPolicy kept = argmin_policy(b, zero, MinPolicy{{0, 1, 0}});
    CHECK(kept.choice == std::vector<int>{0, 1, 0});

    // A tie: both actions of state 0 attain T at x = (0, 0, 2); prev = 1 is
    // retained even though action 0 ties.
    const RatVector x = vec({Rat(0), Rat(0), Rat(2)});
    CHECK(eval_T_sigma(b, MinPolicy{{0, 0, 0}}, x)(0) ==
          eval_T_sigma(b, MinPolicy{{1, 0, 0}}, x)(0));
    const MinPolicy tied = argmin_policy(b, x, MinPolicy{{1, 0, 0}});
    CHECK(tied.choice[0] == 1);
    const MinPolicy tied0 = argmin_policy(b, x, MinPolicy{{0, 0, 0}});
    CHECK(tied0.choice[0] == 0);
}

TEST_CASE("recession operator on the fixtures") {
    const Game b = fix_b();
    CHECK(exact_eq(recession(b, vec({Rat(2), Rat(0), Rat(0)})),
                   vec({Rat(1), Rat(1), Rat(1)})));
    // Constants are trivial fixed points.
    Rng rng(67);
    GameGenParams p;
    for (int t = 0; t < 20; ++t) {
        const Game g = random_game(rng, p);
        const Rat alpha(BigInt(rng.range(-9, 9)), BigInt(rng.range(1, 4)));
        CHECK(exact_eq(recession(g, constant_vector(g.n, alpha)), constant_vector(g.n, alpha)));
    }
}

TEST_CASE("recession is positively homogeneous") {
    Rng rng(71);
    GameGenParams p;
    for (int t = 0; t < 50; ++t) {
        const Game g = random_game(rng, p);
        const RatVector x = random_vec(rng, g.n);
        const Rat alpha(BigInt(rng.range(0, 9)), BigInt(rng.range(1, 4)));
        RatVector ax(g.n), scaled(g.n);
        const RatVector rx = recession(g, x);
        for (int i = 0; i < g.n; ++i) {
            ax(i) = alpha * x(i);
            scaled(i) = alpha * rx(i);
        }
        CHECK(exact_eq(recession(g, ax), scaled));
    }
}

TEST_CASE("teleport-state recession collapses to the running maximum") {
    const Game a = fix_a();
    const Game da = big_m_double(a, Rat(1945), zero_vector(2));
    const RatVector xy = vec({Rat(0), Rat(1), Rat(-4), Rat(2)});
    const RatVector r = recession(da, xy);
    // States 2..3 realize the zero-payment projection: max over x.
    CHECK(r(2) == Rat(1));
    CHECK(r(3) == Rat(1));
}

TEST_CASE("Hilbert seminorm and the M-ball projection") {
    CHECK(hilbert_seminorm(vec({Rat(3), Rat(-1), Rat(0)})) == Rat(4));
    CHECK(hilbert_seminorm(constant_vector(5, Rat(7, 3))) == Rat(0));
    CHECK(hilbert_seminorm(vec({Rat(-18, 5), Rat(-16, 5), Rat(0)})) == Rat(18, 5));

    CHECK(exact_eq(apply_RM(vec({Rat(5), Rat(0), Rat(1)}), Rat(2)),
                   vec({Rat(5), Rat(3), Rat(3)})));

    Rng rng(73);
    for (int t = 0; t < 100; ++t) {
        const int n = static_cast<int>(rng.range(1, 6));
        const RatVector x = random_vec(rng, n);
        const Rat M(BigInt(rng.range(0, 10)), BigInt(rng.range(1, 3)));
        const RatVector once = apply_RM(x, M);
        CHECK(exact_eq(apply_RM(once, M), once));          // idempotent
        CHECK(hilbert_seminorm(once) <= max(M, Rat(0)));   // lands in the ball
        if (hilbert_seminorm(x) <= M) CHECK(exact_eq(once, x));
        if (exact_eq(once, x)) CHECK(hilbert_seminorm(x) <= M);
    }
}

TEST_CASE("value iteration estimates on the fixtures") {
    CHECK(exact_eq(value_iteration_estimate(fix_c(), 4), vec({Rat(3, 2)})));
    CHECK(exact_eq(value_iteration_estimate(fix_a(), 10), vec({Rat(0), Rat(0)})));
    CHECK(exact_eq(value_iteration_estimate(encode_deterministic(fix_d()), 2),
                   vec({Rat(1, 2), Rat(1, 2)})));
}

TEST_CASE("operator axioms hold exactly on random tuples") {
    Rng rng(79);
    GameGenParams p;
    for (int t = 0; t < 200; ++t) {
        const Game g = random_game(rng, p);
        const RatVector x = random_vec(rng, g.n);
        RatVector y = x;
        for (int i = 0; i < g.n; ++i)
            y(i) += Rat(BigInt(rng.range(0, 7)), BigInt(rng.range(1, 4)));  // y >= x
        const Rat alpha(BigInt(rng.range(-9, 9)), BigInt(rng.range(1, 4)));

        const RatVector tx = eval_T(g, x);
        const RatVector ty = eval_T(g, y);
        for (int i = 0; i < g.n; ++i) CHECK(tx(i) <= ty(i));  // monotone

        RatVector shifted(g.n);
        for (int i = 0; i < g.n; ++i) shifted(i) = x(i) + alpha;
        CHECK(exact_eq(eval_T(g, shifted), RatVector(tx + constant_vector(g.n, alpha))));

        // Sup-norm nonexpansiveness against an arbitrary second point.
        const RatVector z = random_vec(rng, g.n);
        const RatVector tz = eval_T(g, z);
        Rat lhs(0), rhs(0);
        for (int i = 0; i < g.n; ++i) {
            lhs = max(lhs, abs(tx(i) - tz(i)));
            rhs = max(rhs, abs(x(i) - z(i)));
        }
        CHECK(lhs <= rhs);
    }
}
