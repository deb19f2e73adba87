#include "mpg/two_player.hpp"

#include <map>
#include <set>

namespace mpg {

namespace {

long long default_cap(const Game& g) {
    BigInt policies(1);
    for (int i = 0; i < g.n; ++i) policies *= g.min_count(i);
    BigInt cap = 2 * policies;
    const BigInt clamp(1'000'000);
    if (cap > clamp) cap = clamp;
    return cap.convert_to<long long>();
}

}  // namespace

HkOutcome hoffman_karp(const Game& g, const MinPolicy& sigma0, const HkOptions& opts) {
    g.validate();
    validate_policy(g, sigma0);
    const long long cap = opts.iteration_cap.value_or(default_cap(g));

    std::set<MinPolicy> visited;
    std::vector<TraceEntry> trace;
    MinPolicy sigma = sigma0;
    for (long long k = 0; k < cap; ++k) {
        visited.insert(sigma);
        const InnerEigen inner = eigenpair_one_player_full(g, sigma, opts.pin);
        if (!trace.empty() && trace.back().lambda < inner.pair.lambda)
            throw InternalError("eigenvalue sequence increased across an improvement");
        trace.push_back(TraceEntry{static_cast<int>(k), inner.pair.lambda, sigma});

        const MinPolicy next = argmin_policy(g, inner.pair.u, sigma);
        if (next == sigma) {
            MaxPolicy tau = least_index_max_policy(g);
            for (int i = 0; i < g.n; ++i) tau.choice[i][sigma.choice[i]] = inner.tau_eff[i];
            return HkOutcome{inner.pair, sigma, std::move(tau), std::move(trace)};
        }
        if (visited.count(next)) {
            std::vector<MinPolicy> seen(visited.begin(), visited.end());
            throw CycleDetectedError(std::move(seen), next);
        }
        sigma = next;
    }
    throw IterationCapError(cap);
}

namespace {

MinPolicy doubled_initial(const Game& doubled, const std::optional<MinPolicy>& sigma0, int n) {
    MinPolicy s = least_index_min_policy(doubled);
    if (sigma0.has_value()) {
        if (static_cast<int>(sigma0->choice.size()) != n)
            throw InvariantViolation("initial policy length differs from n");
        for (int i = 0; i < n; ++i) s.choice[i] = sigma0->choice[i];
    }
    return s;
}

}  // namespace

SolveReport solve_perturbed(const Game& g, const SolveOptions& opts) {
    g.validate();
    const PerturbSpec spec = perturbation_params(g);
    const Game doubled = big_m_double(g, spec);

    HkOptions hk_opts;
    hk_opts.iteration_cap = opts.iteration_cap;
    HkOutcome hk;
    try {
        hk = hoffman_karp(doubled, doubled_initial(doubled, opts.sigma0, g.n), hk_opts);
    } catch (const NonConstantGainError&) {
        throw InternalError("doubled operator produced a non-constant gain");
    } catch (const CycleDetectedError&) {
        throw InternalError("policy iteration cycled on the perturbed doubled operator");
    }

    SolveReport rep;
    rep.sigma_star.choice.assign(hk.sigma.choice.begin(), hk.sigma.choice.begin() + g.n);
    rep.tau_star = least_index_max_policy(g);
    for (int i = 0; i < g.n; ++i)
        rep.tau_star.choice[i][rep.sigma_star.choice[i]] =
            hk.tau.choice[i][rep.sigma_star.choice[i]];
    rep.chibar = lambda_sigma(g, rep.sigma_star, zero_vector(g.n), opts.limits).value;
    rep.perturbed_eigenpair = hk.pair;
    rep.spec = spec;
    rep.trace = std::move(hk.trace);
    rep.method = "perturbed";

    if (opts.verify_with_oracle && brute_chibar(g, opts.limits).chibar != rep.chibar)
        throw InternalError("perturbed solve disagrees with the brute-force value");
    return rep;
}

SolveReport solve_deterministic(const DetGame& dg, const SolveOptions& opts) {
    dg.validate();
    const PerturbSpec spec = perturbation_params_det(dg);
    const Game base = encode_deterministic(big_m_complete_det(dg, spec.M));
    const Game perturbed = shift_payments(base, spec.g);

    HkOptions hk_opts;
    hk_opts.iteration_cap = opts.iteration_cap;
    MinPolicy sigma0 = opts.sigma0.value_or(least_index_min_policy(perturbed));
    HkOutcome hk;
    try {
        hk = hoffman_karp(perturbed, sigma0, hk_opts);
    } catch (const NonConstantGainError&) {
        throw InternalError("completed operator produced a non-constant gain");
    } catch (const CycleDetectedError&) {
        throw InternalError("policy iteration cycled on the perturbed completed operator");
    }

    SolveReport rep;
    rep.sigma_star = hk.sigma;  // Min's action sets agree across the completion
    rep.chibar = lambda_sigma(encode_deterministic(dg), rep.sigma_star, zero_vector(dg.n),
                              opts.limits).value;
    rep.tau_star = hk.tau;
    rep.perturbed_eigenpair = hk.pair;
    rep.spec = spec;
    rep.trace = std::move(hk.trace);
    rep.method = "deterministic";

    if (opts.verify_with_oracle &&
        brute_chibar(encode_deterministic(dg), opts.limits).chibar != rep.chibar)
        throw InternalError("deterministic solve disagrees with the brute-force value");
    return rep;
}

Game big_m_compose(const Game& g, const Rat& M, const EnumLimits& limits) {
    g.validate();
    if (M.sign() < 0) throw InvariantViolation("penalty must be nonnegative");
    Game out;
    out.n = g.n;
    out.states.resize(g.n);
    for (int i = 0; i < g.n; ++i) {
        for (int a = 0; a < g.min_count(i); ++a) {
            MinAction nma;
            for (int b = 0; b < g.max_count(i, a); ++b) {
                const auto& mc = g.at(i, a, b);
                std::vector<int> support;
                for (int j = 0; j < g.n; ++j)
                    if (!mc.transition(j).is_zero()) support.push_back(j);
                // One redirect decision per destination in the support:
                // 0 = keep, 1 + k = go to state k at penalty M.
                BigInt combos = ipow(BigInt(g.n + 1), static_cast<unsigned>(support.size()));
                if (combos > limits.pair_cap)
                    throw EnumerationTooLarge("composed action space needs " + combos.str() +
                                              " actions, cap is " +
                                              std::to_string(limits.pair_cap));
                std::vector<int> redirect(support.size(), 0);
                while (true) {
                    MaxChoice nmc;
                    nmc.payment = mc.payment;
                    nmc.transition = zero_vector(g.n);
                    for (size_t s = 0; s < support.size(); ++s) {
                        const int j = support[s];
                        if (redirect[s] == 0) {
                            nmc.transition(j) += mc.transition(j);
                        } else {
                            nmc.transition(redirect[s] - 1) += mc.transition(j);
                            nmc.payment -= M * mc.transition(j);
                        }
                    }
                    nma.max_actions.push_back(std::move(nmc));
                    size_t s = 0;
                    for (; s < support.size(); ++s) {
                        if (++redirect[s] <= g.n) break;
                        redirect[s] = 0;
                    }
                    if (s == support.size()) break;
                }
            }
            out.states[i].min_actions.push_back(std::move(nma));
        }
    }
    out.validate();
    return out;
}

DoublingCheck check_doubling_transform(const Game& g, const Rat& M, const HkOptions& opts) {
    const Game composed = big_m_compose(g, M);
    const HkOutcome hk_composed = hoffman_karp(composed, least_index_min_policy(composed), opts);
    const Rat lambda = hk_composed.pair.lambda;
    const RatVector& v = hk_composed.pair.u;

    // The materialized game and the functional composition must agree.
    if (!exact_eq(eval_T(g, apply_RM(v, M)), RatVector(constant_vector(g.n, lambda) + v)))
        throw InternalError("composed-game eigenpair fails the functional composition");

    const Game doubled = big_m_double(g, M, zero_vector(g.n));
    const HkOutcome hk_doubled = hoffman_karp(doubled, least_index_min_policy(doubled), opts);

    const Rat half = lambda / Rat(2);
    RatVector mapped(2 * g.n);
    mapped.head(g.n) = v;
    mapped.tail(g.n) = apply_RM(v, M) - constant_vector(g.n, half);

    DoublingCheck out;
    out.lambda_composed = lambda;
    out.lambda_doubled = hk_doubled.pair.lambda;
    out.bias_map_ok = verify_eigenpair(doubled, half, mapped);
    return out;
}

namespace {

// Value of the policy pair under discount: (I - alpha P) v = r, exact.
RatVector discounted_pair_value(const Game& g, const MinPolicy& sigma,
                                const std::vector<int>& tau_eff, const Rat& alpha) {
    const Chain ch = induced_chain(g, sigma, tau_eff);
    RatMatrix S(g.n, g.n);
    for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j) {
            Rat v = -alpha * ch.P(i, j);
            if (i == j) v += Rat(1);
            S(i, j) = v;
        }
    return solve_linear(S, ch.r);
}

Rat discounted_term(const Game& g, int i, int a, int b, const Rat& alpha, const RatVector& v) {
    const auto& mc = g.at(i, a, b);
    Rat acc = mc.payment;
    for (Eigen::Index j = 0; j < v.size(); ++j)
        if (!mc.transition(j).is_zero()) acc += alpha * mc.transition(j) * v(j);
    return acc;
}

// Best reply value at (i, a) against v, least index among ties.
std::pair<Rat, int> discounted_best_reply(const Game& g, int i, int a, const Rat& alpha,
                                          const RatVector& v) {
    Rat best = discounted_term(g, i, a, 0, alpha, v);
    int best_b = 0;
    for (int b = 1; b < g.max_count(i, a); ++b) {
        const Rat val = discounted_term(g, i, a, b, alpha, v);
        if (best < val) {
            best = val;
            best_b = b;
        }
    }
    return {best, best_b};
}

// Max's exact optimal value against a frozen sigma.
RatVector discounted_inner(const Game& g, const MinPolicy& sigma, const Rat& alpha,
                           std::vector<int>& tau_eff) {
    std::set<std::vector<int>> visited;
    while (true) {
        if (!visited.insert(tau_eff).second)
            throw InternalError("discounted inner iteration revisited a policy");
        const RatVector v = discounted_pair_value(g, sigma, tau_eff, alpha);
        bool changed = false;
        for (int i = 0; i < g.n; ++i) {
            const Rat current = discounted_term(g, i, sigma.choice[i], tau_eff[i], alpha, v);
            const auto [best, best_b] = discounted_best_reply(g, i, sigma.choice[i], alpha, v);
            if (current < best) {
                tau_eff[i] = best_b;
                changed = true;
            }
        }
        if (!changed) return v;
    }
}

}  // namespace

DiscountedSolution discounted_baseline(const Game& g, const Rat& alpha) {
    g.validate();
    if (alpha.sign() <= 0 || Rat(1) <= alpha)
        throw InvariantViolation("discount factor must satisfy 0 < alpha < 1");

    MinPolicy sigma = least_index_min_policy(g);
    std::vector<int> tau_eff(g.n, 0);
    std::set<std::vector<int>> visited;
    RatVector v;
    while (true) {
        if (!visited.insert(sigma.choice).second)
            throw InternalError("discounted outer iteration revisited a policy");
        v = discounted_inner(g, sigma, alpha, tau_eff);
        bool changed = false;
        for (int i = 0; i < g.n; ++i) {
            const Rat current = discounted_best_reply(g, i, sigma.choice[i], alpha, v).first;
            Rat best = current;
            int best_a = sigma.choice[i];
            for (int a = 0; a < g.min_count(i); ++a) {
                const Rat val = discounted_best_reply(g, i, a, alpha, v).first;
                if (val < best) {
                    best = val;
                    best_a = a;
                }
            }
            if (best < current) {
                sigma.choice[i] = best_a;
                tau_eff[i] = 0;  // reply indices are per-action; restart this slot
                changed = true;
            }
        }
        if (!changed) break;
    }

    // v is the exact fixed point of x -> T(alpha x).
    RatVector scaled(g.n);
    for (int i = 0; i < g.n; ++i) scaled(i) = alpha * v(i);
    if (!exact_eq(eval_T(g, scaled), v))
        throw InternalError("discounted value is not a fixed point");

    MaxPolicy tau = least_index_max_policy(g);
    for (int i = 0; i < g.n; ++i)
        for (int a = 0; a < g.min_count(i); ++a)
            tau.choice[i][a] = discounted_best_reply(g, i, a, alpha, v).second;
    return DiscountedSolution{v, sigma, tau};
}

}  // namespace mpg
