#include "mpg/one_player.hpp"

#include <set>

namespace mpg {

namespace {

// Expected continuation P_i^b . v for reply b at (i, sigma(i)).
Rat continuation(const Game& g, const MinPolicy& sigma, int i, int b, const RatVector& v) {
    const auto& mc = g.at(i, sigma.choice[i], b);
    Rat acc(0);
    for (Eigen::Index j = 0; j < v.size(); ++j)
        if (!mc.transition(j).is_zero()) acc += mc.transition(j) * v(j);
    return acc;
}

Rat reward(const Game& g, const MinPolicy& sigma, int i, int b) {
    return g.at(i, sigma.choice[i], b).payment;
}

// Lexicographic progress check on (gain, pinned bias): componentwise >= with
// strict increase somewhere, gain first.
bool lex_increased(const RatVector& chi_old, const RatVector& h_old, const RatVector& chi_new,
                   const RatVector& h_new) {
    bool some_up = false;
    for (Eigen::Index i = 0; i < chi_old.size(); ++i) {
        if (chi_new(i) < chi_old(i)) return false;
        if (chi_old(i) < chi_new(i)) some_up = true;
    }
    if (some_up) return true;
    for (Eigen::Index i = 0; i < h_old.size(); ++i) {
        if (h_new(i) < h_old(i)) return false;
        if (h_old(i) < h_new(i)) some_up = true;
    }
    return some_up;
}

}  // namespace

OnePlayerSolution solve_one_player(const Game& g, const MinPolicy& sigma, PinRule pin) {
    validate_policy(g, sigma);
    const int n = g.n;
    std::vector<int> tau(n, 0);

    std::set<std::vector<int>> visited;
    RatVector chi_prev, h_prev;
    bool have_prev = false;
    int iterations = 0;

    ChainAnalysis analysis;
    while (true) {
        if (!visited.insert(tau).second)
            throw InternalError("one-player policy iteration revisited a policy");
        ++iterations;
        analysis = gain_bias(induced_chain(g, sigma, tau), pin);
        const RatVector& chi = analysis.gain;
        const RatVector& h = analysis.bias;

        if (have_prev && !lex_increased(chi_prev, h_prev, chi, h))
            throw InternalError("one-player iteration did not improve lexicographically");
        chi_prev = chi;
        h_prev = h;
        have_prev = true;

        // Phase 1: raise the gain where possible.
        bool changed = false;
        std::vector<int> next = tau;
        for (int i = 0; i < n; ++i) {
            Rat best = chi(i);
            int best_b = -1;
            for (int b = 0; b < g.max_count(i, sigma.choice[i]); ++b) {
                const Rat v = continuation(g, sigma, i, b, chi);
                if (best < v) {
                    best = v;
                    best_b = b;
                }
            }
            if (best_b >= 0) {
                next[i] = best_b;
                changed = true;
            }
        }
        if (changed) {
            tau = std::move(next);
            continue;
        }

        // Phase 2: among gain-maximizing replies, raise r + P h.
        for (int i = 0; i < n; ++i) {
            Rat best = chi(i) + h(i);  // value of the current reply
            int best_b = -1;
            for (int b = 0; b < g.max_count(i, sigma.choice[i]); ++b) {
                if (continuation(g, sigma, i, b, chi) != chi(i)) continue;
                const Rat v = reward(g, sigma, i, b) + continuation(g, sigma, i, b, h);
                if (best < v) {
                    best = v;
                    best_b = b;
                }
            }
            if (best_b >= 0) {
                next[i] = best_b;
                changed = true;
            }
        }
        if (changed) {
            tau = std::move(next);
            continue;
        }
        break;
    }

    const RatVector& chi = analysis.gain;
    const RatVector& h = analysis.bias;

    // Optimality equations, re-verified exactly.
    Rat alpha0(0);
    for (int i = 0; i < n; ++i) {
        Rat gain_max = continuation(g, sigma, i, 0, chi);
        for (int b = 1; b < g.max_count(i, sigma.choice[i]); ++b)
            gain_max = max(gain_max, continuation(g, sigma, i, b, chi));
        if (gain_max != chi(i)) throw InternalError("gain optimality equation violated");
        Rat bias_max = chi(i) + h(i);
        for (int b = 0; b < g.max_count(i, sigma.choice[i]); ++b) {
            const Rat pc = continuation(g, sigma, i, b, chi);
            const Rat val = reward(g, sigma, i, b) + continuation(g, sigma, i, b, h);
            if (pc == chi(i)) {
                if (bias_max < val) throw InternalError("bias optimality equation violated");
            } else {
                // Dominated for large alpha; record from where.
                const Rat need = (val - chi(i) - h(i)) / (chi(i) - pc);
                if (alpha0 < need) alpha0 = need;
            }
        }
    }

    OnePlayerSolution sol;
    sol.half_line = HalfLine{h, chi, alpha0};
    sol.tau_eff = tau;
    sol.iterations = iterations;
    return sol;
}

InnerEigen eigenpair_one_player_full(const Game& g, const MinPolicy& sigma, PinRule pin) {
    OnePlayerSolution sol = solve_one_player(g, sigma, pin);
    const RatVector& chi = sol.half_line.nu;
    for (Eigen::Index i = 1; i < chi.size(); ++i)
        if (chi(i) != chi(0)) throw NonConstantGainError(chi);

    RatVector u = sol.half_line.u;
    const Rat shift = u(u.size() - 1);
    for (Eigen::Index i = 0; i < u.size(); ++i) u(i) -= shift;
    Eigenpair pair{chi(0), u};
    if (!exact_eq(eval_T_sigma(g, sigma, pair.u),
                  RatVector(constant_vector(g.n, pair.lambda) + pair.u)))
        throw InternalError("one-player eigenpair failed verification");
    return InnerEigen{std::move(pair), std::move(sol.tau_eff)};
}

Eigenpair eigenpair_one_player(const Game& g, const MinPolicy& sigma, PinRule pin) {
    return eigenpair_one_player_full(g, sigma, pin).pair;
}

namespace {

MaxPolicy complete_policy(const Game& g, const MinPolicy& sigma, const std::vector<int>& tau_eff) {
    MaxPolicy tau = least_index_max_policy(g);
    for (int i = 0; i < g.n; ++i) tau.choice[i][sigma.choice[i]] = tau_eff[i];
    return tau;
}

}  // namespace

LambdaSigma lambda_sigma(const Game& g, const MinPolicy& sigma, const RatVector& shift,
                         const EnumLimits& limits) {
    validate_policy(g, sigma);
    if (shift.size() != g.n) throw InvariantViolation("shift length differs from n");

    BigInt work(1);
    for (int i = 0; i < g.n; ++i) work *= g.max_count(i, sigma.choice[i]);
    if (work > limits.pair_cap)
        throw EnumerationTooLarge("reply enumeration needs " + work.str() + " chains, cap is " +
                                  std::to_string(limits.pair_cap));

    LambdaSigma out;
    bool have = false;
    std::set<std::vector<std::string>> seen;  // canonical measure keys
    std::vector<int> tau(g.n, 0);
    while (true) {
        const Chain ch = induced_chain(g, sigma, tau);
        const ClassDecomposition dec = communication_classes(ch.P);
        for (int cid : dec.final_class_ids()) {
            const RatVector m = invariant_measure(ch.P, dec.classes[cid]);
            Rat value(0);
            for (int s : dec.classes[cid]) value += m(s) * (shift(s) + ch.r(s));
            if (!have || out.value < value) {
                out.value = value;
                out.witnesses.clear();
                seen.clear();
                have = true;
            }
            if (value == out.value) {
                std::vector<std::string> key(g.n);
                for (int s = 0; s < g.n; ++s) key[s] = to_string(m(s));
                if (seen.insert(std::move(key)).second)
                    out.witnesses.push_back(
                        MeasureWitness{complete_policy(g, sigma, tau), dec.classes[cid], m, value});
            }
        }
        // Next reply profile, odometer order.
        int i = 0;
        for (; i < g.n; ++i) {
            if (++tau[i] < g.max_count(i, sigma.choice[i])) break;
            tau[i] = 0;
        }
        if (i == g.n) break;
    }

    // Same number through the policy-iteration route, exactly.
    const OnePlayerSolution sol = solve_one_player(shift_payments(g, shift), sigma);
    Rat top = sol.half_line.nu(0);
    for (Eigen::Index i = 1; i < sol.half_line.nu.size(); ++i)
        top = max(top, sol.half_line.nu(i));
    if (top != out.value)
        throw InternalError("measure enumeration and policy iteration disagree on the eigenvalue");
    return out;
}

CertificateResult unique_bias_certificate(const Game& g, const MinPolicy& sigma,
                                          const RatVector& shift, const EnumLimits& limits) {
    CertificateResult res{Certificate::Inconclusive, lambda_sigma(g, sigma, shift, limits)};
    if (res.detail.witnesses.size() == 1) res.verdict = Certificate::Unique;
    return res;
}

}  // namespace mpg
