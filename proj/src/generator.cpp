#include "fdds/generator.hpp"

#include <algorithm>
#include <numeric>

namespace fdds {

Fdds gen_random_fdds(SplitRng& rng, std::uint32_t n) {
    Fdds f;
    f.succ.resize(n);
    for (std::uint32_t i = 0; i < n; ++i) f.succ[i] = static_cast<State>(rng.below(n));
    return f;
}

Fdds gen_random_connected(SplitRng& rng, std::uint32_t n) {
    if (n == 0) return Fdds{};
    const std::uint32_t cycle = static_cast<std::uint32_t>(rng.in(1, n));
    Fdds f = make_cycle(cycle);
    for (std::uint32_t i = cycle; i < n; ++i) {
        f.succ.push_back(static_cast<State>(rng.below(i)));
    }
    return f;
}

CycleSum gen_random_cycle_sum(SplitRng& rng, std::uint64_t total, std::uint64_t max_len) {
    std::vector<CycleEntry> raw;
    std::uint64_t remaining = total;
    while (remaining > 0) {
        std::uint64_t cap = remaining;
        if (max_len > 0) cap = std::min(cap, max_len);
        const std::uint64_t len = rng.in(1, cap);
        const std::uint64_t count = rng.in(1, remaining / len);
        raw.push_back({BigInt(len), BigInt(count)});
        remaining -= len * count;
    }
    return CycleSum::from_pairs(std::move(raw));
}

CycleSum gen_pseudo_cancelable_cs(SplitRng& rng, std::uint64_t total) {
    if (total == 0) return CycleSum::zero();
    // base length m must divide every length, so in particular the total
    std::vector<std::uint64_t> divisors;
    for (std::uint64_t d = 1; d * d <= total; ++d) {
        if (total % d == 0) {
            divisors.push_back(d);
            if (d != total / d) divisors.push_back(total / d);
        }
    }
    std::sort(divisors.begin(), divisors.end());
    // prefer small bases so the sum has room for several lengths
    std::vector<std::uint64_t> small;
    for (std::uint64_t d : divisors) {
        if (d <= std::max<std::uint64_t>(total / 2, 1)) small.push_back(d);
    }
    if (small.empty()) small.push_back(1);
    const std::uint64_t m = small[rng.below(small.size())];
    const std::uint64_t budget = total / m;  // in units of m
    std::vector<CycleEntry> raw;
    raw.push_back({BigInt(m), BigInt(1)});  // the base length itself
    std::uint64_t remaining = budget - 1;
    while (remaining > 0) {
        const std::uint64_t k = rng.in(1, remaining);
        const std::uint64_t count = rng.in(1, remaining / k);
        raw.push_back({BigInt(m * k), BigInt(count)});
        remaining -= k * count;
    }
    return CycleSum::from_pairs(std::move(raw));
}

CyclePoly gen_pseudo_injective_poly(SplitRng& rng, std::uint32_t max_degree,
                                    std::uint64_t coeff_states_max, bool with_constant) {
    const std::uint32_t degree = static_cast<std::uint32_t>(rng.in(1, max_degree));
    const std::uint64_t m = rng.in(1, 3);
    CyclePoly p;
    bool base_present = false;
    for (std::uint32_t d = 1; d <= degree; ++d) {
        if (d != degree && rng.below(2) == 0) continue;  // sparse polynomials too
        std::vector<CycleEntry> raw;
        std::uint64_t budget = rng.in(1, std::max<std::uint64_t>(coeff_states_max / m, 1));
        while (budget > 0) {
            const std::uint64_t k = rng.in(1, std::min<std::uint64_t>(budget, 4));
            const std::uint64_t count = rng.in(1, budget / k);
            raw.push_back({BigInt(m * k), BigInt(count)});
            if (k == 1) base_present = true;
            budget -= k * count;
        }
        p.coeffs.emplace(d, CycleSum::from_pairs(std::move(raw)));
    }
    if (!base_present) {
        auto& coeff = p.coeffs.rbegin()->second;
        coeff = cs_add(coeff, CycleSum::single(m, 1));
    }
    if (with_constant && rng.below(2) == 0) {
        p.coeffs.emplace(0, gen_random_cycle_sum(rng, rng.in(1, coeff_states_max)));
    }
    return p;
}

namespace {

// hangs extra transient states onto a permutation, keeping its cycles intact
Fdds graft_transients(SplitRng& rng, const Fdds& base, std::uint32_t extra) {
    Fdds f = base;
    for (std::uint32_t i = 0; i < extra; ++i) {
        f.succ.push_back(static_cast<State>(rng.below(f.size())));
    }
    return f;
}

}  // namespace

FddsPoly gen_pseudo_injective_fdds_poly(SplitRng& rng, std::uint32_t max_degree,
                                        std::uint32_t coeff_states_max, bool with_constant,
                                        bool transients) {
    const std::uint32_t degree = static_cast<std::uint32_t>(rng.in(1, max_degree));
    const std::uint64_t m = rng.in(1, 3);
    FddsPoly p;
    bool base_present = false;
    for (std::uint32_t d = 1; d <= degree; ++d) {
        if (d != degree && rng.below(2) == 0) continue;
        const std::uint64_t states = rng.in(m, std::max<std::uint64_t>(coeff_states_max, m));
        // the cycle part: lengths that are multiples of m
        std::vector<CycleEntry> raw;
        std::uint64_t cycle_budget = std::max<std::uint64_t>(states / (transients ? 2 : 1) / m, 1);
        std::uint64_t used = 0;
        while (cycle_budget > 0) {
            const std::uint64_t k = rng.in(1, std::min<std::uint64_t>(cycle_budget, 3));
            const std::uint64_t count = rng.in(1, cycle_budget / k);
            raw.push_back({BigInt(m * k), BigInt(count)});
            if (k == 1) base_present = true;
            cycle_budget -= k * count;
            used += m * k * count;
        }
        Fdds coeff = cs_to_fdds(CycleSum::from_pairs(std::move(raw)));
        if (transients && states > used) {
            coeff = graft_transients(rng, coeff, static_cast<std::uint32_t>(states - used));
        }
        p.coeffs.emplace(d, std::move(coeff));
    }
    if (!base_present) {
        auto& coeff = p.coeffs.rbegin()->second;
        coeff = sum(coeff, make_cycle(m));
    }
    if (with_constant && rng.below(2) == 0) {
        const std::uint32_t states = static_cast<std::uint32_t>(rng.in(1, coeff_states_max));
        p.coeffs.emplace(0, transients ? gen_random_fdds(rng, states)
                                       : cs_to_fdds(gen_random_cycle_sum(rng, states)));
    }
    return p;
}

Fdds shuffle_labels(SplitRng& rng, const Fdds& f) {
    const std::size_t n = f.size();
    std::vector<State> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    for (std::size_t i = n; i > 1; --i) {
        std::swap(perm[i - 1], perm[rng.below(i)]);
    }
    Fdds out;
    out.succ.resize(n);
    for (State i = 0; i < n; ++i) out.succ[perm[i]] = perm[f.succ[i]];
    return out;
}

}  // namespace fdds
