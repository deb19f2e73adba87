#include "mpg/markov.hpp"

#include <algorithm>

namespace mpg {

void Chain::validate() const {
    const Eigen::Index n = P.rows();
    if (P.cols() != n || r.size() != n) throw InvariantViolation("chain shape mismatch");
    for (Eigen::Index i = 0; i < n; ++i) {
        Rat sum(0);
        for (Eigen::Index j = 0; j < n; ++j) {
            if (P(i, j).sign() < 0) throw InvariantViolation("negative transition probability");
            sum += P(i, j);
        }
        if (sum != Rat(1)) throw InvariantViolation("row does not sum to 1");
    }
}

std::vector<int> ClassDecomposition::final_class_ids() const {
    std::vector<int> ids;
    for (size_t c = 0; c < classes.size(); ++c)
        if (final_flags[c]) ids.push_back(static_cast<int>(c));
    return ids;
}

namespace {

// Iterative Tarjan with neighbors visited in ascending state order, so the
// component layout is reproducible.
struct Tarjan {
    const RatMatrix& P;
    int n;
    std::vector<int> index, low, stack;
    std::vector<bool> on_stack;
    std::vector<std::vector<int>> components;
    int counter = 0;

    explicit Tarjan(const RatMatrix& p) : P(p), n(static_cast<int>(p.rows())),
        index(n, -1), low(n, 0), on_stack(n, false) {}

    void run() {
        for (int s = 0; s < n; ++s)
            if (index[s] < 0) visit(s);
    }

    void visit(int root) {
        struct Frame { int v; int next_j; };
        std::vector<Frame> frames{{root, 0}};
        while (!frames.empty()) {
            Frame& f = frames.back();
            if (f.next_j == 0) {
                index[f.v] = low[f.v] = counter++;
                stack.push_back(f.v);
                on_stack[f.v] = true;
            }
            bool descended = false;
            while (f.next_j < n) {
                const int j = f.next_j++;
                if (P(f.v, j).is_zero()) continue;
                if (index[j] < 0) {
                    frames.push_back({j, 0});
                    descended = true;
                    break;
                }
                if (on_stack[j]) low[f.v] = std::min(low[f.v], index[j]);
            }
            if (descended) continue;
            if (low[f.v] == index[f.v]) {
                std::vector<int> comp;
                while (true) {
                    const int w = stack.back();
                    stack.pop_back();
                    on_stack[w] = false;
                    comp.push_back(w);
                    if (w == f.v) break;
                }
                std::sort(comp.begin(), comp.end());
                components.push_back(std::move(comp));
            }
            const int v = f.v;
            frames.pop_back();
            if (!frames.empty()) low[frames.back().v] = std::min(low[frames.back().v], low[v]);
        }
    }
};

}  // namespace

ClassDecomposition communication_classes(const RatMatrix& P) {
    const int n = static_cast<int>(P.rows());
    Tarjan t(P);
    t.run();
    ClassDecomposition d;
    d.classes = std::move(t.components);
    std::sort(d.classes.begin(), d.classes.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    d.class_of.assign(n, -1);
    for (size_t c = 0; c < d.classes.size(); ++c)
        for (int s : d.classes[c]) d.class_of[s] = static_cast<int>(c);
    d.final_flags.assign(d.classes.size(), true);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (!P(i, j).is_zero() && d.class_of[j] != d.class_of[i])
                d.final_flags[d.class_of[i]] = false;
    bool any_final = false;
    for (bool f : d.final_flags) any_final = any_final || f;
    if (!any_final) throw InternalError("stochastic matrix without a final class");
    return d;
}

RatVector invariant_measure(const RatMatrix& P, const std::vector<int>& final_class) {
    const int k = static_cast<int>(final_class.size());
    const int n = static_cast<int>(P.rows());
    // Rows 0..k-2: the restricted (I - P^T) m = 0 equations; the dropped one
    // is redundant. Last row: total mass 1.
    RatMatrix S(k, k);
    RatVector rhs = zero_vector(k);
    for (int r = 0; r + 1 < k; ++r)
        for (int c = 0; c < k; ++c) {
            Rat v = -P(final_class[c], final_class[r]);
            if (r == c) v += Rat(1);
            S(r, c) = v;
        }
    for (int c = 0; c < k; ++c) S(k - 1, c) = Rat(1);
    rhs(k - 1) = Rat(1);

    const RatVector m = solve_linear(S, rhs);

    RatVector full = zero_vector(n);
    Rat total(0);
    BigInt lcm_den(1);
    for (int c = 0; c < k; ++c) {
        if (m(c).sign() <= 0)
            throw InternalError("invariant measure not strictly positive on its class");
        full(final_class[c]) = m(c);
        total += m(c);
        lcm_den = boost::multiprecision::lcm(lcm_den, m(c).den());
    }
    if (total != Rat(1)) throw InternalError("invariant measure does not sum to 1");
    for (int j = 0; j < n; ++j) {
        Rat acc(0);
        for (int i = 0; i < n; ++i) acc += full(i) * P(i, j);
        if (acc != full(j)) throw InternalError("measure is not invariant");
    }

    // Hadamard-style size guarantee for the Cramer solution of the cleared
    // system: with k states and restricted entries of size at most D, the
    // common denominator L satisfies L^2 <= k^k D^{2k^2}.
    BigInt D(1);
    for (int r = 0; r < k; ++r)
        for (int c = 0; c < k; ++c) {
            const Rat& e = P(final_class[r], final_class[c]);
            const BigInt a = boost::multiprecision::abs(e.num());
            if (D < a) D = a;
            if (D < e.den()) D = e.den();
        }
    const unsigned ku = static_cast<unsigned>(k);
    if (lcm_den * lcm_den > ipow(BigInt(k), ku) * ipow(D, 2 * ku * ku))
        throw InternalError("invariant measure denominator exceeds its size bound");
    return full;
}

ChainAnalysis gain_bias(const Chain& ch, PinRule pin) {
    ch.validate();
    const int n = static_cast<int>(ch.P.rows());
    ChainAnalysis out;
    out.decomposition = communication_classes(ch.P);
    const auto final_ids = out.decomposition.final_class_ids();

    out.gain = zero_vector(n);
    std::vector<bool> is_final_state(n, false);
    for (int cid : final_ids) {
        const auto& cls = out.decomposition.classes[cid];
        const RatVector m = invariant_measure(ch.P, cls);
        Rat value(0);
        for (int s : cls) value += m(s) * ch.r(s);
        for (int s : cls) {
            out.gain(s) = value;
            is_final_state[s] = true;
        }
        out.measures.push_back(m);
        out.pin_states.push_back(pin == PinRule::LeastIndex ? cls.front() : cls.back());
    }

    std::vector<int> transient;
    for (int s = 0; s < n; ++s)
        if (!is_final_state[s]) transient.push_back(s);
    if (!transient.empty()) {
        const int t = static_cast<int>(transient.size());
        RatMatrix S(t, t);
        RatVector rhs(t);
        for (int a = 0; a < t; ++a) {
            Rat acc(0);
            for (int s = 0; s < n; ++s)
                if (is_final_state[s]) acc += ch.P(transient[a], s) * out.gain(s);
            rhs(a) = acc;
            for (int b = 0; b < t; ++b) {
                Rat v = -ch.P(transient[a], transient[b]);
                if (a == b) v += Rat(1);
                S(a, b) = v;
            }
        }
        const RatVector x = solve_linear(S, rhs);
        for (int a = 0; a < t; ++a) out.gain(transient[a]) = x(a);
    }

    // chi = P chi, exactly.
    if (!exact_eq(RatVector(ch.P * out.gain), out.gain))
        throw InternalError("gain is not harmonic");

    // Poisson equation with the pin rows swapped in for normalization.
    std::vector<bool> pinned(n, false);
    for (int p : out.pin_states) pinned[p] = true;
    RatMatrix S(n, n);
    RatVector rhs(n);
    for (int i = 0; i < n; ++i) {
        if (pinned[i]) {
            for (int j = 0; j < n; ++j) S(i, j) = Rat(i == j ? 1 : 0);
            rhs(i) = Rat(0);
            continue;
        }
        for (int j = 0; j < n; ++j) {
            Rat v = -ch.P(i, j);
            if (i == j) v += Rat(1);
            S(i, j) = v;
        }
        rhs(i) = ch.r(i) - out.gain(i);
    }
    out.bias = solve_linear(S, rhs);

    // The replaced pin rows must hold too; re-verify the full system.
    if (!exact_eq(RatVector(out.gain + out.bias), RatVector(ch.r + ch.P * out.bias)))
        throw InternalError("Poisson equation violated");
    return out;
}

}  // namespace mpg
