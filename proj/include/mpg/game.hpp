#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mpg/linalg.hpp"

namespace mpg {

/*
 * Finite perfect-information zero-sum stochastic game.
 *
 * States are indexed 0..n-1. In state i the minimizer picks an action a from
 * a nonempty ordered list, then the maximizer picks b from a nonempty ordered
 * list attached to (i, a); this fixes a payment (paid by Min to Max) and a
 * probability row over next states. Rows are exactly stochastic.
 */
struct MaxChoice {
    Rat payment;
    RatVector transition;  // length n, entries >= 0, sums to exactly 1
};

struct MinAction {
    std::vector<MaxChoice> max_actions;  // nonempty
};

struct GameState {
    std::vector<MinAction> min_actions;  // nonempty
};

struct Game {
    int n = 0;
    std::vector<GameState> states;

    const MaxChoice& at(int i, int a, int b) const { return states[i].min_actions[a].max_actions[b]; }
    int min_count(int i) const { return static_cast<int>(states[i].min_actions.size()); }
    int max_count(int i, int a) const { return static_cast<int>(states[i].min_actions[a].max_actions.size()); }

    // Throws InvariantViolation on empty action sets or non-stochastic rows.
    void validate() const;
};

bool operator==(const Game& a, const Game& b);

// Bipartite deterministic game. Max owns m nodes, Min owns n nodes; entries
// are integers or absent (no edge). B must have no fully absent row and A no
// fully absent column, so both players can always move.
struct DetGame {
    int m = 0;
    int n = 0;
    std::vector<std::vector<std::optional<BigInt>>> A;  // m x n
    std::vector<std::vector<std::optional<BigInt>>> B;  // m x n

    void validate() const;
};

bool operator==(const DetGame& a, const DetGame& b);

// Penalty/perturbation parameters for one solve.
struct PerturbSpec {
    Rat M;        // teleport penalty, > 0
    Rat eps;      // perturbation parameter, 0 <= eps < 1 (factories produce eps > 0)
    RatVector g;  // g[i] = eps^{i+1}; strictly decreasing and positive when eps > 0
    BigInt D;     // payment/probability magnitude bound used to derive M and eps
};

// UTF-8 JSON, schema:
//   {"n": int, "states": [{"min_actions": [{"max_actions":
//       [{"r": "p/q", "p": ["p/q", ...]}]}]}]}
// Rationals are canonical "p/q" strings. parse(serialize(G)) == G, field-exact.
Game parse_game(const std::string& text);
std::string serialize_game(const Game& g);

// {"m": int, "n": int, "A": [[int|null, ...]], "B": [[int|null, ...]]},
// null meaning "no edge".
DetGame parse_det_game(const std::string& text);
std::string serialize_det_game(const DetGame& dg);

// Looks at the top-level keys of a JSON document to decide which of the two
// formats it uses.
enum class InputKind { Game, Det };
InputKind detect_input_kind(const std::string& text);

// One Min node per column of A; Min's actions are the rows j with A[j][i]
// present, Max then picks a column k with B[j][k] present. Payment
// -A[j][i] + B[j][k], next state k (deterministic).
Game encode_deterministic(const DetGame& dg);

// Direct evaluation of the bipartite min-max recursion; reference route for
// checking encode_deterministic.
RatVector eval_det_operator(const DetGame& dg, const RatVector& x);

// max(2, |numerator| and denominator of every payment and transition entry).
BigInt magnitude_bound(const Game& g);

// M = 4*ceil(sqrt(n^n))*D^{n^2+1} + 1 and eps = 1/(n^n*D^{2n(n+1)} + 1):
// the smallest clean rationals strictly inside the required open bounds.
PerturbSpec perturbation_params(const Game& g);

// Deterministic specialization: M = 4nD + 1, eps = 1/(n^3 + 1), with
// D = max(2, largest |finite entry|).
PerturbSpec perturbation_params_det(const DetGame& dg);

// Payment-shift: the game whose operator is g + T.
Game shift_payments(const Game& g, const RatVector& shift);

// Doubled game: 2n states. States 0..n-1 copy g with transitions retargeted
// to n..2n-1 and payments shifted by gvec; in states n..2n-1 Min has a single
// action and Max picks any j < n, free when j = i-n and at penalty -M
// otherwise. Its operator is (gvec, 0) + (T(y), R_M(x)).
Game big_m_double(const Game& g, const Rat& M, const RatVector& gvec);
Game big_m_double(const Game& g, const PerturbSpec& spec);

// Replaces absent entries of B by -M; A unchanged. M must be a positive
// integer.
DetGame big_m_complete_det(const DetGame& dg, const Rat& M);

}  // namespace mpg
