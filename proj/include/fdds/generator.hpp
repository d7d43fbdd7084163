#pragma once

#include <cstdint>
#include <random>

#include "fdds/cyclesum.hpp"
#include "fdds/fdds.hpp"
#include "fdds/solver_general.hpp"

namespace fdds {

// Deterministic random source: same seed, same stream, on every platform
// (only the raw mt19937_64 output is used, never the standard distributions).
class SplitRng {
public:
    explicit SplitRng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next() { return eng_(); }

    // uniform-ish value in [0, n); n >= 1
    std::uint64_t below(std::uint64_t n) { return eng_() % n; }

    std::uint64_t in(std::uint64_t lo, std::uint64_t hi) {  // inclusive bounds
        return lo + below(hi - lo + 1);
    }

private:
    std::mt19937_64 eng_;
};

// Uniform random successor table with n states.
Fdds gen_random_fdds(SplitRng& rng, std::uint32_t n);

// One random connected system: a cycle plus randomly attached transients.
Fdds gen_random_connected(SplitRng& rng, std::uint32_t n);

// Random sum of cycles with exactly total states.
CycleSum gen_random_cycle_sum(SplitRng& rng, std::uint64_t total, std::uint64_t max_len = 0);

// Random pseudo-cancelable sum of cycles with exactly total states.
CycleSum gen_pseudo_cancelable_cs(SplitRng& rng, std::uint64_t total);

// Random pseudo-injective polynomial over sums of cycles: every coefficient
// length is a multiple of a common base, and the base length itself occurs in
// some nonconstant coefficient.
CyclePoly gen_pseudo_injective_poly(SplitRng& rng, std::uint32_t max_degree,
                                    std::uint64_t coeff_states_max, bool with_constant);

// Same shape with explicit coefficients, optionally with transient states
// grafted on.
FddsPoly gen_pseudo_injective_fdds_poly(SplitRng& rng, std::uint32_t max_degree,
                                        std::uint32_t coeff_states_max, bool with_constant,
                                        bool transients);

// Permutes the state labels; the result is isomorphic to the input.
Fdds shuffle_labels(SplitRng& rng, const Fdds& f);

}  // namespace fdds
