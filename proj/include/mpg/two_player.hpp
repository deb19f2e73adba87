#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mpg/one_player.hpp"
#include "mpg/oracle.hpp"

namespace mpg {

// Policy iteration revisited a Min policy without converging: the instance
// is degenerate and should be solved through the perturbed route.
class CycleDetectedError : public Error {
public:
    CycleDetectedError(std::vector<MinPolicy> visited, MinPolicy repeated)
        : Error("policy iteration cycled"), visited_(std::move(visited)),
          repeated_(std::move(repeated)) {}
    const std::vector<MinPolicy>& visited() const { return visited_; }
    const MinPolicy& repeated() const { return repeated_; }

private:
    std::vector<MinPolicy> visited_;
    MinPolicy repeated_;
};

class IterationCapError : public Error {
public:
    explicit IterationCapError(long long cap)
        : Error("policy iteration exceeded its cap of " + std::to_string(cap) + " iterations") {}
};

struct TraceEntry {
    int k;
    Rat lambda;
    MinPolicy sigma;
};

struct HkOptions {
    // Outer-iteration cap; defaults to twice the number of Min policies
    // (clamped) when absent.
    std::optional<long long> iteration_cap;
    PinRule pin = PinRule::LeastIndex;
};

struct HkOutcome {
    Eigenpair pair;    // of the operator iterated on, u[n-1] = 0
    MinPolicy sigma;   // terminal policy, T^sigma(u) = T(u)
    MaxPolicy tau;     // replies from the final inner solve, least-index elsewhere
    std::vector<TraceEntry> trace;
};

// Alternates an exact inner solve of T^sigma with a conservative greedy
// improvement of sigma until the policy is stable. The lambda sequence is
// nonincreasing; this is re-checked exactly at every step.
// Throws NonConstantGainError, CycleDetectedError or IterationCapError.
HkOutcome hoffman_karp(const Game& g, const MinPolicy& sigma0, const HkOptions& opts = {});

struct SolveReport {
    Rat chibar;                      // upper mean payoff of the original game
    MinPolicy sigma_star;            // optimal Min policy of the original game
    MaxPolicy tau_star;              // replies from the final inner solve
    Eigenpair perturbed_eigenpair;   // of the operator actually iterated on
    std::optional<PerturbSpec> spec;
    std::vector<TraceEntry> trace;
    std::string method;
};

struct SolveOptions {
    std::optional<MinPolicy> sigma0;
    std::optional<long long> iteration_cap;
    EnumLimits limits;
    bool verify_with_oracle = false;  // desk-scale cross-check of chibar
};

// Doubles the state space with teleport states, folds the perturbation into
// the payments, runs policy iteration (which must terminate here), restricts
// the terminal policy to the original states and evaluates its exact value
// on the unperturbed game. Works on degenerate and non-ergodic inputs.
SolveReport solve_perturbed(const Game& g, const SolveOptions& opts = {});

// Deterministic specialization: completes B with the -M penalty, encodes,
// shifts payments by the perturbation, iterates, and reads the answer off
// the unperturbed encoding (a maximum cycle mean).
SolveReport solve_deterministic(const DetGame& dg, const SolveOptions& opts = {});

// The game whose operator is x -> T(R_M(x)): after nature's draw the
// maximizer may redirect the token to any reachable-or-not state at penalty
// M. Max's compound action fixes the reply and one redirect decision per
// destination in the support of the chosen row. Exponential in the support
// size; desk-scale only.
Game big_m_compose(const Game& g, const Rat& M, const EnumLimits& limits = {});

struct DoublingCheck {
    Rat lambda_composed;  // eigenvalue of T . R_M
    Rat lambda_doubled;   // eigenvalue of (x,y) -> (T(y), R_M(x))
    bool bias_map_ok;     // (v, R_M(v) - (lambda/2) e) solves the doubled equation
};

// Solves the composed and the doubled operators independently and checks the
// bias correspondence between them, exactly.
DoublingCheck check_doubling_transform(const Game& g, const Rat& M, const HkOptions& opts = {});

struct DiscountedSolution {
    RatVector value;  // exact fixed point of x -> T(alpha x)
    MinPolicy sigma;
    MaxPolicy tau;
};

// Two-level policy iteration for the discounted operator; each fixed pair is
// evaluated through (I - alpha P) v = r exactly. Contraction makes the
// improvement strict, so it terminates unconditionally.
DiscountedSolution discounted_baseline(const Game& g, const Rat& alpha);

}  // namespace mpg
