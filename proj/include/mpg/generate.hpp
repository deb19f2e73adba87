#pragma once

#include <cstdint>
#include <random>

#include "mpg/game.hpp"

namespace mpg {

// Deterministic bounded sampling on top of the fixed mt19937_64 stream, so
// generated instances are identical across platforms and runs.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    // Uniform in [0, n) by rejection.
    std::uint64_t below(std::uint64_t n);

    // Uniform in [lo, hi], inclusive.
    long long range(long long lo, long long hi);

    // True with probability num/den.
    bool chance(unsigned num, unsigned den) { return below(den) < num; }

private:
    std::mt19937_64 engine_;
};

struct GameGenParams {
    int n_min = 1;
    int n_max = 4;
    int max_min_actions = 3;
    int max_max_actions = 3;
    int den_bound = 4;       // denominators of payments and probabilities
    int pay_num_bound = 8;   // |payment numerator| bound
    // Degeneracy injectors.
    bool duplicate_actions = false;  // copy an existing action verbatim
    bool tie_payments = false;       // collapse payments to a tiny value set
    bool force_reducible = false;    // bias rows towards Dirac transitions
};

Game random_game(Rng& rng, const GameGenParams& params);

struct DetGenParams {
    int m_min = 1;
    int m_max = 5;
    int n_min = 1;
    int n_max = 5;
    int entry_bound = 10;       // |finite entry| bound
    unsigned density_pct = 60;  // probability an entry is finite, in percent
    bool tie_payments = false;
};

DetGame random_det_game(Rng& rng, const DetGenParams& params);

// Random exactly-stochastic row: d uniform draws over n slots, denominator d.
RatVector random_stochastic_row(Rng& rng, int n, int den_bound, bool dirac_bias);

}  // namespace mpg
