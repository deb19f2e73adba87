#pragma once

#include <vector>

#include "mpg/game.hpp"
#include "mpg/markov.hpp"

namespace mpg {

// Stationary deterministic policy of the minimizer: an action index per state.
struct MinPolicy {
    std::vector<int> choice;

    friend bool operator==(const MinPolicy& a, const MinPolicy& b) { return a.choice == b.choice; }
    friend bool operator<(const MinPolicy& a, const MinPolicy& b) { return a.choice < b.choice; }
};

// Stationary deterministic policy of the maximizer: an index per (state, Min
// action) pair.
struct MaxPolicy {
    std::vector<std::vector<int>> choice;

    friend bool operator==(const MaxPolicy& a, const MaxPolicy& b) { return a.choice == b.choice; }
};

MinPolicy least_index_min_policy(const Game& g);
MaxPolicy least_index_max_policy(const Game& g);
void validate_policy(const Game& g, const MinPolicy& sigma);
void validate_policy(const Game& g, const MaxPolicy& tau);

// Solution of T(u) = lambda e + u, normalized so that u[n-1] = 0.
struct Eigenpair {
    Rat lambda;
    RatVector u;
};

// Invariant half-line alpha -> u + alpha nu: T(u + alpha nu) = u + (alpha+1) nu
// for every rational alpha >= alpha0. nu is the mean-payoff vector of the
// operator the half-line belongs to.
struct HalfLine {
    RatVector u;
    RatVector nu;
    Rat alpha0;
};

// One step of the dynamic programming recursion:
// T_i(x) = min over Min's actions of max over Max's replies of
// (payment + expected continuation). Exact; ties carry no information here
// since only the value is returned.
RatVector eval_T(const Game& g, const RatVector& x);

// Min frozen at sigma (a one-player maximization), and Max frozen at tau
// (a one-player minimization).
RatVector eval_T_sigma(const Game& g, const MinPolicy& sigma, const RatVector& x);
RatVector eval_T_tau(const Game& g, const MaxPolicy& tau, const RatVector& x);

// Both players frozen: the affine map r + P x of the induced chain.
RatVector eval_chain_op(const Game& g, const MinPolicy& sigma, const MaxPolicy& tau,
                        const RatVector& x);

// The chain induced by sigma and a per-state choice of Max replies along
// sigma (tau_eff[i] indexes into the replies at (i, sigma(i))).
Chain induced_chain(const Game& g, const MinPolicy& sigma, const std::vector<int>& tau_eff);

// Conservative greedy improvement: at every state where prev's action still
// attains T_i(x), prev is kept; otherwise the smallest-index minimizing
// action is chosen. The result sigma satisfies T^sigma(x) = T(x).
MinPolicy argmin_policy(const Game& g, const RatVector& x, const MinPolicy& prev);

// The operator with payments zeroed: positively homogeneous, monotone,
// additively homogeneous.
RatVector recession(const Game& g, const RatVector& x);

// max_i x_i - min_i x_i; zero exactly on constant vectors.
Rat hilbert_seminorm(const RatVector& x);

// [R_M(x)]_i = max(x_i, max_j(-M + x_j)): projection onto the M-ball of the
// Hilbert seminorm. Idempotent; fixes x iff hilbert_seminorm(x) <= M.
RatVector apply_RM(const RatVector& x, const Rat& M);

// T^k(0)/k, exact. Diagnostic only; converges too slowly to decide anything.
RatVector value_iteration_estimate(const Game& g, int k);

}  // namespace mpg
