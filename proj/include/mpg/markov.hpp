#pragma once

#include <vector>

#include "mpg/linalg.hpp"

namespace mpg {

// Markov reward chain: exact stochastic matrix plus per-state reward.
struct Chain {
    RatMatrix P;  // n x n, rows sum to exactly 1
    RatVector r;  // length n

    void validate() const;
};

// Communication classes of the positive-entry digraph, numbered by their
// smallest state, states ascending within a class. A class is final when no
// arc leaves it.
struct ClassDecomposition {
    std::vector<std::vector<int>> classes;
    std::vector<bool> final_flags;
    std::vector<int> class_of;  // state -> class index

    std::vector<int> final_class_ids() const;
};

ClassDecomposition communication_classes(const RatMatrix& P);

// Unique invariant probability measure supported on a final class, as a
// full-length vector. Solved exactly from the class-restricted system
// (I - P^T) m = 0, sum m = 1 with the last redundant row dropped.
RatVector invariant_measure(const RatMatrix& P, const std::vector<int>& final_class);

// Which state of each final class gets its bias pinned to zero.
enum class PinRule { LeastIndex, GreatestIndex };

struct ChainAnalysis {
    ClassDecomposition decomposition;
    std::vector<RatVector> measures;  // one per final class, aligned with final_class_ids()
    RatVector gain;                   // chi = P chi; on a final class, <m_c, r>
    RatVector bias;                   // gain + bias = r + P bias, bias[pin] = 0
    std::vector<int> pin_states;      // one per final class
};

// Exact gain and bias of the chain. Gains on final classes come from the
// invariant measures, transient gains from (I - P_TT) chi_T = P_TF chi_F,
// and the bias from the Poisson equation with one pin row per final class.
// Every equation is re-verified exactly before returning.
ChainAnalysis gain_bias(const Chain& ch, PinRule pin = PinRule::LeastIndex);

}  // namespace mpg
