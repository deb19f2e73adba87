#include "mpg/oracle.hpp"

#include <set>

namespace mpg {

namespace {

// Sum over sigma of the reply-profile counts along sigma; this factorizes as
// a product over states of per-state sums.
BigInt enumeration_work(const Game& g) {
    BigInt work(1);
    for (int i = 0; i < g.n; ++i) {
        BigInt per_state(0);
        for (int a = 0; a < g.min_count(i); ++a) per_state += g.max_count(i, a);
        work *= per_state;
    }
    return work;
}

void check_cap(const Game& g, const EnumLimits& limits) {
    const BigInt work = enumeration_work(g);
    if (work > limits.pair_cap)
        throw EnumerationTooLarge("full enumeration needs " + work.str() + " chains, cap is " +
                                  std::to_string(limits.pair_cap));
}

bool next_profile(std::vector<int>& v, const std::vector<int>& radix) {
    for (size_t i = 0; i < v.size(); ++i) {
        if (++v[i] < radix[i]) return true;
        v[i] = 0;
    }
    return false;
}

// Chain of (sigma, reply profile) built straight from the game data.
void build_chain(const Game& g, const std::vector<int>& sigma, const std::vector<int>& tau,
                 RatMatrix& P, RatVector& r) {
    for (int i = 0; i < g.n; ++i) {
        const auto& mc = g.at(i, sigma[i], tau[i]);
        r(i) = mc.payment;
        for (int j = 0; j < g.n; ++j) P(i, j) = mc.transition(j);
    }
}

// Exact gain vector of one chain: invariant measures on final classes, then
// the transient part through absorption.
RatVector chain_gain(const RatMatrix& P, const RatVector& r,
                     std::vector<std::pair<std::vector<int>, RatVector>>* measures_out) {
    const int n = static_cast<int>(P.rows());
    const ClassDecomposition dec = communication_classes(P);
    RatVector gain = zero_vector(n);
    std::vector<bool> final_state(n, false);
    for (int cid : dec.final_class_ids()) {
        const auto& cls = dec.classes[cid];
        const RatVector m = invariant_measure(P, cls);
        Rat value(0);
        for (int s : cls) value += m(s) * r(s);
        for (int s : cls) {
            gain(s) = value;
            final_state[s] = true;
        }
        if (measures_out) measures_out->push_back({cls, m});
    }
    std::vector<int> transient;
    for (int s = 0; s < n; ++s)
        if (!final_state[s]) transient.push_back(s);
    if (!transient.empty()) {
        const int t = static_cast<int>(transient.size());
        RatMatrix S(t, t);
        RatVector rhs(t);
        for (int a = 0; a < t; ++a) {
            Rat acc(0);
            for (int s = 0; s < n; ++s)
                if (final_state[s]) acc += P(transient[a], s) * gain(s);
            rhs(a) = acc;
            for (int b = 0; b < t; ++b) {
                Rat v = -P(transient[a], transient[b]);
                if (a == b) v += Rat(1);
                S(a, b) = v;
            }
        }
        const RatVector x = solve_linear(S, rhs);
        for (int a = 0; a < t; ++a) gain(transient[a]) = x(a);
    }
    return gain;
}

MaxPolicy as_full_policy(const Game& g, const std::vector<int>& sigma, const std::vector<int>& tau) {
    MaxPolicy full = least_index_max_policy(g);
    for (int i = 0; i < g.n; ++i) full.choice[i][sigma[i]] = tau[i];
    return full;
}

struct PerSigma {
    Rat lambda;                             // max over replies and measures
    RatVector opt_gain;                     // componentwise max of chain gains
    std::vector<MeasureWitness> witnesses;  // measures attaining lambda
};

PerSigma analyze_sigma(const Game& g, const std::vector<int>& sigma) {
    PerSigma out;
    std::vector<int> radix(g.n);
    for (int i = 0; i < g.n; ++i) radix[i] = g.max_count(i, sigma[i]);
    std::vector<int> tau(g.n, 0);
    RatMatrix P(g.n, g.n);
    RatVector r(g.n);
    bool first = true;
    std::set<std::vector<std::string>> seen;
    do {
        build_chain(g, sigma, tau, P, r);
        std::vector<std::pair<std::vector<int>, RatVector>> measures;
        const RatVector gain = chain_gain(P, r, &measures);
        if (first) {
            out.opt_gain = gain;
        } else {
            for (int i = 0; i < g.n; ++i)
                if (out.opt_gain(i) < gain(i)) out.opt_gain(i) = gain(i);
        }
        for (auto& [cls, m] : measures) {
            Rat value(0);
            for (int s : cls) value += m(s) * r(s);
            if (first || out.lambda < value) {
                out.lambda = value;
                out.witnesses.clear();
                seen.clear();
                first = false;
            }
            if (value == out.lambda) {
                std::vector<std::string> key(g.n);
                for (int s = 0; s < g.n; ++s) key[s] = to_string(m(s));
                if (seen.insert(std::move(key)).second)
                    out.witnesses.push_back(MeasureWitness{as_full_policy(g, sigma, tau), cls, m, value});
            }
            first = false;
        }
    } while (next_profile(tau, radix));
    return out;
}

}  // namespace

OracleReport brute_chibar(const Game& g, const EnumLimits& limits) {
    g.validate();
    check_cap(g, limits);

    std::vector<int> sigma_radix(g.n);
    for (int i = 0; i < g.n; ++i) sigma_radix[i] = g.min_count(i);
    std::vector<int> sigma(g.n, 0);

    OracleReport rep;
    RatVector best_gain;
    std::vector<RatVector> all_gains;
    bool have = false;
    do {
        const PerSigma ps = analyze_sigma(g, sigma);
        all_gains.push_back(ps.opt_gain);
        if (!have) {
            rep.chibar = ps.lambda;
            rep.attaining_sigma = MinPolicy{sigma};
            rep.witnesses = ps.witnesses;
            best_gain = ps.opt_gain;
            have = true;
        } else {
            if (ps.lambda < rep.chibar) {
                rep.chibar = ps.lambda;
                rep.attaining_sigma = MinPolicy{sigma};
                rep.witnesses = ps.witnesses;
            }
            for (int i = 0; i < g.n; ++i)
                if (ps.opt_gain(i) < best_gain(i)) best_gain(i) = ps.opt_gain(i);
        }
    } while (next_profile(sigma, sigma_radix));
    rep.chi = best_gain;

    // One sigma must attain the componentwise minimum everywhere at once.
    bool min_attained_jointly = false;
    for (const RatVector& gain : all_gains)
        if (exact_eq(gain, rep.chi)) {
            min_attained_jointly = true;
            break;
        }
    if (!min_attained_jointly)
        throw InternalError("no single policy attains the componentwise minimal gain");

    Rat top = rep.chi(0);
    for (Eigen::Index i = 1; i < rep.chi.size(); ++i) top = max(top, rep.chi(i));
    if (top != rep.chibar)
        throw InternalError("min-max value differs from the largest mean payoff entry");

    // Witness sanity: exact invariance and exact value.
    for (const auto& w : rep.witnesses) {
        Rat total(0);
        RatMatrix P(g.n, g.n);
        RatVector r(g.n);
        std::vector<int> tau_eff(g.n);
        for (int i = 0; i < g.n; ++i) tau_eff[i] = w.tau.choice[i][rep.attaining_sigma.choice[i]];
        build_chain(g, rep.attaining_sigma.choice, tau_eff, P, r);
        for (int j = 0; j < g.n; ++j) {
            Rat acc(0);
            for (int i = 0; i < g.n; ++i) acc += w.measure(i) * P(i, j);
            if (acc != w.measure(j)) throw InternalError("oracle witness measure not invariant");
        }
        Rat value(0);
        for (int i = 0; i < g.n; ++i) {
            value += w.measure(i) * r(i);
            total += w.measure(i);
        }
        if (total != Rat(1) || value != rep.chibar)
            throw InternalError("oracle witness value mismatch");
    }
    return rep;
}

RatVector brute_mean_payoff(const Game& g, const EnumLimits& limits) {
    return brute_chibar(g, limits).chi;
}

bool verify_eigenpair(const Game& g, const Rat& lambda, const RatVector& u) {
    if (u.size() != g.n) throw InvariantViolation("vector length differs from n");
    return exact_eq(eval_T(g, u), RatVector(constant_vector(g.n, lambda) + u));
}

}  // namespace mpg
