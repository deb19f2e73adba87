#include "mpg/shapley.hpp"

namespace mpg {

MinPolicy least_index_min_policy(const Game& g) {
    return MinPolicy{std::vector<int>(g.n, 0)};
}

MaxPolicy least_index_max_policy(const Game& g) {
    MaxPolicy tau;
    tau.choice.resize(g.n);
    for (int i = 0; i < g.n; ++i) tau.choice[i].assign(g.min_count(i), 0);
    return tau;
}

void validate_policy(const Game& g, const MinPolicy& sigma) {
    if (static_cast<int>(sigma.choice.size()) != g.n)
        throw InvariantViolation("Min policy length differs from n");
    for (int i = 0; i < g.n; ++i)
        if (sigma.choice[i] < 0 || sigma.choice[i] >= g.min_count(i))
            throw InvariantViolation("Min policy action out of range at state " + std::to_string(i));
}

void validate_policy(const Game& g, const MaxPolicy& tau) {
    if (static_cast<int>(tau.choice.size()) != g.n)
        throw InvariantViolation("Max policy length differs from n");
    for (int i = 0; i < g.n; ++i) {
        if (static_cast<int>(tau.choice[i].size()) != g.min_count(i))
            throw InvariantViolation("Max policy row length mismatch at state " + std::to_string(i));
        for (int a = 0; a < g.min_count(i); ++a)
            if (tau.choice[i][a] < 0 || tau.choice[i][a] >= g.max_count(i, a))
                throw InvariantViolation("Max policy reply out of range");
    }
}

namespace {

Rat payoff_term(const MaxChoice& mc, const RatVector& x) {
    Rat acc = mc.payment;
    for (Eigen::Index j = 0; j < x.size(); ++j)
        if (!mc.transition(j).is_zero()) acc += mc.transition(j) * x(j);
    return acc;
}

Rat max_over_replies(const MinAction& ma, const RatVector& x) {
    Rat best = payoff_term(ma.max_actions[0], x);
    for (size_t b = 1; b < ma.max_actions.size(); ++b) {
        Rat v = payoff_term(ma.max_actions[b], x);
        if (best < v) best = v;
    }
    return best;
}

}  // namespace

RatVector eval_T(const Game& g, const RatVector& x) {
    if (x.size() != g.n) throw InvariantViolation("vector length differs from n");
    RatVector out(g.n);
    for (int i = 0; i < g.n; ++i) {
        const auto& st = g.states[i];
        Rat best = max_over_replies(st.min_actions[0], x);
        for (size_t a = 1; a < st.min_actions.size(); ++a) {
            Rat v = max_over_replies(st.min_actions[a], x);
            if (v < best) best = v;
        }
        out(i) = best;
    }
    return out;
}

RatVector eval_T_sigma(const Game& g, const MinPolicy& sigma, const RatVector& x) {
    validate_policy(g, sigma);
    if (x.size() != g.n) throw InvariantViolation("vector length differs from n");
    RatVector out(g.n);
    for (int i = 0; i < g.n; ++i)
        out(i) = max_over_replies(g.states[i].min_actions[sigma.choice[i]], x);
    return out;
}

RatVector eval_T_tau(const Game& g, const MaxPolicy& tau, const RatVector& x) {
    validate_policy(g, tau);
    if (x.size() != g.n) throw InvariantViolation("vector length differs from n");
    RatVector out(g.n);
    for (int i = 0; i < g.n; ++i) {
        Rat best = payoff_term(g.at(i, 0, tau.choice[i][0]), x);
        for (int a = 1; a < g.min_count(i); ++a) {
            Rat v = payoff_term(g.at(i, a, tau.choice[i][a]), x);
            if (v < best) best = v;
        }
        out(i) = best;
    }
    return out;
}

RatVector eval_chain_op(const Game& g, const MinPolicy& sigma, const MaxPolicy& tau,
                        const RatVector& x) {
    validate_policy(g, sigma);
    validate_policy(g, tau);
    RatVector out(g.n);
    for (int i = 0; i < g.n; ++i)
        out(i) = payoff_term(g.at(i, sigma.choice[i], tau.choice[i][sigma.choice[i]]), x);
    return out;
}

Chain induced_chain(const Game& g, const MinPolicy& sigma, const std::vector<int>& tau_eff) {
    validate_policy(g, sigma);
    if (static_cast<int>(tau_eff.size()) != g.n)
        throw InvariantViolation("effective Max policy length differs from n");
    Chain ch;
    ch.P.resize(g.n, g.n);
    ch.r.resize(g.n);
    for (int i = 0; i < g.n; ++i) {
        const auto& mc = g.at(i, sigma.choice[i], tau_eff[i]);
        ch.r(i) = mc.payment;
        for (int j = 0; j < g.n; ++j) ch.P(i, j) = mc.transition(j);
    }
    return ch;
}

MinPolicy argmin_policy(const Game& g, const RatVector& x, const MinPolicy& prev) {
    validate_policy(g, prev);
    const RatVector target = eval_T(g, x);
    MinPolicy out = prev;
    for (int i = 0; i < g.n; ++i) {
        const auto& st = g.states[i];
        if (max_over_replies(st.min_actions[prev.choice[i]], x) == target(i)) continue;
        for (int a = 0; a < g.min_count(i); ++a) {
            if (max_over_replies(st.min_actions[a], x) == target(i)) {
                out.choice[i] = a;
                break;
            }
        }
    }
    return out;
}

RatVector recession(const Game& g, const RatVector& x) {
    if (x.size() != g.n) throw InvariantViolation("vector length differs from n");
    RatVector out(g.n);
    for (int i = 0; i < g.n; ++i) {
        const auto& st = g.states[i];
        bool first_a = true;
        Rat best;
        for (const auto& ma : st.min_actions) {
            bool first_b = true;
            Rat inner;
            for (const auto& mc : ma.max_actions) {
                Rat acc(0);
                for (Eigen::Index j = 0; j < x.size(); ++j)
                    if (!mc.transition(j).is_zero()) acc += mc.transition(j) * x(j);
                if (first_b || inner < acc) {
                    inner = acc;
                    first_b = false;
                }
            }
            if (first_a || inner < best) {
                best = inner;
                first_a = false;
            }
        }
        out(i) = best;
    }
    return out;
}

Rat hilbert_seminorm(const RatVector& x) {
    if (x.size() == 0) return Rat(0);
    Rat lo = x(0), hi = x(0);
    for (Eigen::Index i = 1; i < x.size(); ++i) {
        if (x(i) < lo) lo = x(i);
        if (hi < x(i)) hi = x(i);
    }
    return hi - lo;
}

RatVector apply_RM(const RatVector& x, const Rat& M) {
    if (M.sign() < 0) throw InvariantViolation("penalty must be nonnegative");
    Rat top = x(0);
    for (Eigen::Index i = 1; i < x.size(); ++i)
        if (top < x(i)) top = x(i);
    const Rat floor = top - M;
    RatVector out(x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) out(i) = max(x(i), floor);
    return out;
}

RatVector value_iteration_estimate(const Game& g, int k) {
    if (k < 1) throw InvariantViolation("horizon must be >= 1");
    RatVector v = zero_vector(g.n);
    for (int step = 0; step < k; ++step) v = eval_T(g, v);
    const Rat inv(BigInt(1), BigInt(k));
    for (Eigen::Index i = 0; i < v.size(); ++i) v(i) *= inv;
    return v;
}

}  // namespace mpg
