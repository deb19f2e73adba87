#include "mpg/generate.hpp"

namespace mpg {

std::uint64_t Rng::below(std::uint64_t n) {
    if (n == 0) throw InvariantViolation("empty range");
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t v;
    do {
        v = engine_();
    } while (v >= limit);
    return v % n;
}

long long Rng::range(long long lo, long long hi) {
    return lo + static_cast<long long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
}

RatVector random_stochastic_row(Rng& rng, int n, int den_bound, bool dirac_bias) {
    RatVector row = zero_vector(n);
    if (dirac_bias && rng.chance(1, 2)) {
        row(rng.below(n)) = Rat(1);
        return row;
    }
    const int d = static_cast<int>(rng.range(1, den_bound));
    std::vector<int> hits(n, 0);
    for (int t = 0; t < d; ++t) hits[rng.below(n)]++;
    for (int j = 0; j < n; ++j)
        if (hits[j] > 0) row(j) = Rat(BigInt(hits[j]), BigInt(d));
    return row;
}

namespace {

Rat random_payment(Rng& rng, const GameGenParams& p) {
    if (p.tie_payments) {
        // Tiny value set: lots of equal cycle means.
        static const int values[] = {0, 0, 0, 1, -1};
        return Rat(values[rng.below(5)]);
    }
    const long long den = rng.range(1, p.den_bound);
    const long long num = rng.range(-p.pay_num_bound, p.pay_num_bound);
    return Rat(BigInt(num), BigInt(den));
}

}  // namespace

Game random_game(Rng& rng, const GameGenParams& params) {
    Game g;
    g.n = static_cast<int>(rng.range(params.n_min, params.n_max));
    g.states.resize(g.n);
    for (int i = 0; i < g.n; ++i) {
        const int na = static_cast<int>(rng.range(1, params.max_min_actions));
        for (int a = 0; a < na; ++a) {
            MinAction ma;
            const int nb = static_cast<int>(rng.range(1, params.max_max_actions));
            for (int b = 0; b < nb; ++b) {
                MaxChoice mc;
                mc.payment = random_payment(rng, params);
                mc.transition = random_stochastic_row(rng, g.n, params.den_bound,
                                                      params.force_reducible);
                ma.max_actions.push_back(std::move(mc));
            }
            g.states[i].min_actions.push_back(std::move(ma));
        }
    }
    if (params.duplicate_actions && g.n > 0) {
        // Duplicate one Max reply and one Min action verbatim.
        const int i = static_cast<int>(rng.below(g.n));
        auto& st = g.states[i];
        auto& ma = st.min_actions[rng.below(st.min_actions.size())];
        ma.max_actions.push_back(ma.max_actions[rng.below(ma.max_actions.size())]);
        st.min_actions.push_back(st.min_actions[rng.below(st.min_actions.size())]);
    }
    g.validate();
    return g;
}

DetGame random_det_game(Rng& rng, const DetGenParams& params) {
    DetGame dg;
    dg.m = static_cast<int>(rng.range(params.m_min, params.m_max));
    dg.n = static_cast<int>(rng.range(params.n_min, params.n_max));
    auto entry = [&](bool force) -> std::optional<BigInt> {
        if (!force && !rng.chance(params.density_pct, 100)) return std::nullopt;
        if (params.tie_payments) return BigInt(rng.below(2));
        return BigInt(rng.range(-params.entry_bound, params.entry_bound));
    };
    dg.A.assign(dg.m, std::vector<std::optional<BigInt>>(dg.n));
    dg.B.assign(dg.m, std::vector<std::optional<BigInt>>(dg.n));
    for (int j = 0; j < dg.m; ++j)
        for (int k = 0; k < dg.n; ++k) {
            dg.A[j][k] = entry(false);
            dg.B[j][k] = entry(false);
        }
    // Every Min node needs an action, every used Max row needs a reply.
    for (int i = 0; i < dg.n; ++i) {
        bool any = false;
        for (int j = 0; j < dg.m; ++j) any = any || dg.A[j][i].has_value();
        if (!any) dg.A[rng.below(dg.m)][i] = entry(true);
    }
    for (int j = 0; j < dg.m; ++j) {
        bool any = false;
        for (int k = 0; k < dg.n; ++k) any = any || dg.B[j][k].has_value();
        if (!any) dg.B[j][rng.below(dg.n)] = entry(true);
    }
    dg.validate();
    return dg;
}

}  // namespace mpg
