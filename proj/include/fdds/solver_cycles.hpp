#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "fdds/cyclesum.hpp"
#include "fdds/fdds.hpp"

namespace fdds {

enum class SolveReason {
    solved,
    no_solution,
    precondition_failed,
};

// One greedy iteration, in the order: remaining right-hand side, partial
// solution, chosen cycle, evaluation with and without it, and their
// difference (what the iteration consumed).
struct SolveTraceRow {
    CycleSum b_remaining;
    CycleSum y_partial;
    CycleSum c_chosen;
    CycleSum p_of_y_plus_c;
    CycleSum p_of_y;
    CycleSum delta;
    bool operator==(const SolveTraceRow&) const = default;
};

struct SolveTrace {
    std::vector<SolveTraceRow> rows;
    bool operator==(const SolveTrace&) const = default;
};

struct SolveOutcome {
    SolveReason reason = SolveReason::no_solution;
    std::optional<CycleSum> solution;  // present iff reason == solved
    SolveTrace trace;
    std::string diagnostic;
};

struct SolveOptions {
    bool record_trace = true;
    std::uint64_t state_cap = kDefaultStateCap;
};

// AX = B over sums of cycles given as explicit digraphs, A pseudo-cancelable.
// Returns the solution maximizing the number of connected components.
SolveOutcome solve_linear_explicit(const Fdds& a, const Fdds& b, const SolveOptions& opts = {});

// P(Y) = B for a pseudo-injective polynomial over sums of cycles, B explicit.
SolveOutcome solve_poly_explicit(const CyclePoly& p, const Fdds& b, const SolveOptions& opts = {});

// Same equations over the compact (length, count) encoding: counts may be far
// beyond anything an explicit digraph could hold.
SolveOutcome solve_linear_compact(const CycleSum& a, const CycleSum& b, const SolveOptions& opts = {});
SolveOutcome solve_poly_compact(const CyclePoly& p, const CycleSum& b, const SolveOptions& opts = {});

// Explicit front end over the compact linear solver: converts, solves,
// answers the same solutions as solve_linear_explicit at a fraction of the
// cost.
SolveOutcome solve_linear_explicit_fast(const Fdds& a, const Fdds& b, const SolveOptions& opts = {});

// Replaces one cycle of length k*l in x by d copies of the cycle of length
// (k/d)*l. Under the solver's side conditions this preserves P(x-context).
CycleSum rewrite_solution(const CycleSum& x, const BigInt& k, const BigInt& d, const BigInt& l);

}  // namespace fdds
