#pragma once

#include "mpg/one_player.hpp"

namespace mpg {

/*
 * Brute-force ground truth for desk-scale games. Shares nothing with the
 * solvers beyond the game data model and the exact chain analysis: every
 * quantity is recomputed by full enumeration of policy pairs and final-class
 * measures.
 */
struct OracleReport {
    Rat chibar;                             // min over sigma, max over (tau, measure)
    RatVector chi;                          // per-state mean payoff
    MinPolicy attaining_sigma;              // first minimizer in enumeration order
    std::vector<MeasureWitness> witnesses;  // measures attaining chibar under attaining_sigma
};

OracleReport brute_chibar(const Game& g, const EnumLimits& limits = {});

// Componentwise min over sigma of the optimal one-player gain, itself the
// componentwise max over replies of exact chain gains. Flags a defect unless
// one sigma attains the minimum in every component simultaneously.
RatVector brute_mean_payoff(const Game& g, const EnumLimits& limits = {});

// Exact componentwise test of T(u) = lambda e + u.
bool verify_eigenpair(const Game& g, const Rat& lambda, const RatVector& u);

}  // namespace mpg
