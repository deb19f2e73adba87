#pragma once

#include "mpg/game.hpp"
#include "mpg/shapley.hpp"

// Shared test fixtures.
//
//   fix_a: two states. T1(x) = max(x1, (x1+x2)/2),
//          T2(x) = max(-3+x2, (x1+x2)/2). Value 0, eigenvector 0.
//   fix_b: three states with coupled averaging/switching terms; value 6/5
//          with eigenvector (-18/5, -16/5, 0).
//   fix_c: one state, self-loop, payment 3/2.
//   fix_d: bipartite two-cycle with payments 2 and -1; cycle mean 1/2.

namespace mpg::fixtures {

inline MaxChoice mk(const Rat& r, std::vector<Rat> row) {
    MaxChoice mc;
    mc.payment = r;
    mc.transition.resize(static_cast<Eigen::Index>(row.size()));
    for (size_t j = 0; j < row.size(); ++j) mc.transition(static_cast<Eigen::Index>(j)) = row[j];
    return mc;
}

inline Game fix_a() {
    Game g;
    g.n = 2;
    g.states.resize(2);
    g.states[0].min_actions.push_back(
        MinAction{{mk(Rat(0), {Rat(1), Rat(0)}), mk(Rat(0), {Rat(1, 2), Rat(1, 2)})}});
    g.states[1].min_actions.push_back(
        MinAction{{mk(Rat(-3), {Rat(0), Rat(1)}), mk(Rat(0), {Rat(1, 2), Rat(1, 2)})}});
    g.validate();
    return g;
}

inline Game fix_b() {
    Game g;
    g.n = 3;
    g.states.resize(3);
    const Rat h(1, 2);
    g.states[0].min_actions.push_back(MinAction{{mk(Rat(0), {h, Rat(0), h})}});
    g.states[0].min_actions.push_back(MinAction{{mk(Rat(1), {h, h, Rat(0)})}});
    g.states[1].min_actions.push_back(MinAction{{mk(Rat(2), {h, Rat(0), h})}});
    g.states[1].min_actions.push_back(
        MinAction{{mk(Rat(1), {h, h, Rat(0)}), mk(Rat(-2), {Rat(0), Rat(0), Rat(1)})}});
    g.states[2].min_actions.push_back(
        MinAction{{mk(Rat(3), {h, Rat(0), h}), mk(Rat(1), {Rat(0), Rat(0), Rat(1)})}});
    g.validate();
    return g;
}

inline Game fix_c() {
    Game g;
    g.n = 1;
    g.states.resize(1);
    g.states[0].min_actions.push_back(MinAction{{mk(Rat(3, 2), {Rat(1)})}});
    g.validate();
    return g;
}

inline DetGame fix_d() {
    DetGame dg;
    dg.m = 2;
    dg.n = 2;
    dg.A = {{BigInt(0), std::nullopt}, {std::nullopt, BigInt(0)}};
    dg.B = {{std::nullopt, BigInt(2)}, {BigInt(-1), std::nullopt}};
    dg.validate();
    return dg;
}

// Two decoupled self-loops with payments 0 and 1: mean payoff (0, 1), no
// eigenpair.
inline Game split_loops() {
    Game g;
    g.n = 2;
    g.states.resize(2);
    g.states[0].min_actions.push_back(MinAction{{mk(Rat(0), {Rat(1), Rat(0)})}});
    g.states[1].min_actions.push_back(MinAction{{mk(Rat(1), {Rat(0), Rat(1)})}});
    g.validate();
    return g;
}

inline RatVector vec(std::vector<Rat> vals) {
    RatVector v(static_cast<Eigen::Index>(vals.size()));
    for (size_t i = 0; i < vals.size(); ++i) v(static_cast<Eigen::Index>(i)) = vals[i];
    return v;
}

}  // namespace mpg::fixtures
