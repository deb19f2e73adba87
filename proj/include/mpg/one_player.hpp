#pragma once

#include <vector>

#include "mpg/shapley.hpp"

namespace mpg {

// The converged inner problem has a non-constant optimal gain, so no
// eigenpair exists for this reduced operator. Carries the gain vector.
class NonConstantGainError : public Error {
public:
    explicit NonConstantGainError(RatVector chi)
        : Error("reduced operator has non-constant optimal gain"), chi_(std::move(chi)) {}
    const RatVector& chi() const { return chi_; }

private:
    RatVector chi_;
};

// Work cap for enumeration-based operations. Counts (sigma, tau|sigma)
// chains actually analyzed; Max choices at Min actions a policy never plays
// cannot change any chain, so they are not multiplied in.
struct EnumLimits {
    long long pair_cap = 1'000'000;
};

// Optimal gain and bias of the one-player maximization T^sigma, found by
// two-phase policy improvement: first raise the gain (chi = P chi), then the
// bias (r + P h) among gain-maximizing replies, conservative about ties.
// The pair (chi, pinned h) increases strictly lexicographically, so the loop
// terminates within |replies| iterations.
struct OnePlayerSolution {
    HalfLine half_line;        // u = bias, nu = gain, with an explicit alpha0 witness
    std::vector<int> tau_eff;  // optimal reply at (i, sigma(i)) per state
    int iterations = 0;
};

OnePlayerSolution solve_one_player(const Game& g, const MinPolicy& sigma,
                                   PinRule pin = PinRule::LeastIndex);

// Requires the optimal gain to be a constant vector; returns (lambda, u)
// with u[n-1] = 0 and T^sigma(u) = lambda e + u verified exactly.
// Throws NonConstantGainError otherwise.
Eigenpair eigenpair_one_player(const Game& g, const MinPolicy& sigma,
                               PinRule pin = PinRule::LeastIndex);

// Internal-but-shared variant that also exposes the optimal replies.
struct InnerEigen {
    Eigenpair pair;
    std::vector<int> tau_eff;
};
InnerEigen eigenpair_one_player_full(const Game& g, const MinPolicy& sigma,
                                     PinRule pin = PinRule::LeastIndex);

// A reply policy, a final class of its chain, the invariant measure on that
// class, and the measure's value against the shifted payments.
struct MeasureWitness {
    MaxPolicy tau;
    std::vector<int> final_class;
    RatVector measure;
    Rat value;
};

// Largest value of <m, shift + r> over all reply policies and final-class
// measures; the exact upper mean payoff of the shifted reduced operator.
// Witnesses attaining the maximum are collected, deduplicated by measure.
// Cross-checked internally against the policy-iteration route.
struct LambdaSigma {
    Rat value;
    std::vector<MeasureWitness> witnesses;
};

LambdaSigma lambda_sigma(const Game& g, const MinPolicy& sigma, const RatVector& shift,
                         const EnumLimits& limits = {});

// Sufficient certificate: a single maximizing measure forces a unique bias
// (up to an additive constant) for the shifted reduced operator.
// Inconclusive proves nothing.
enum class Certificate { Unique, Inconclusive };

struct CertificateResult {
    Certificate verdict;
    LambdaSigma detail;
};

CertificateResult unique_bias_certificate(const Game& g, const MinPolicy& sigma,
                                          const RatVector& shift, const EnumLimits& limits = {});

}  // namespace mpg
